//! Seeded generators for formulas, systems, and models.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::{from_linear, AutomataMap};
use crate::error::ShapeError;
use crate::frontends::IplFormula;
use crate::logic::Logic;
use crate::semantics::{KripkeFrame, KripkeModel};
use crate::syntax::{Alphabet, Letter, ModalFormula, Rule, SemiThueSystem, Word};

/// Random formula in negation normal form with exactly `size` nodes, over
/// the letters of `alphabet` (both directions), the given propositions and
/// nominals.
pub fn random_nnf(rng: &mut impl Rng, alphabet: &Alphabet, props: &[&str], nominals: &[&str], size: usize) -> ModalFormula {
    use ModalFormula as M;
    let letter = |rng: &mut _| Letter::from_index(Rng::gen_range(rng, 0..alphabet.len()));
    let atom = |rng: &mut dyn rand::RngCore| {
        let k = props.len() + nominals.len();
        let i = rng.gen_range(0..k);
        if i < props.len() {
            M::prop(props[i])
        } else {
            M::nominal(nominals[i - props.len()])
        }
    };
    match size {
        0 | 1 => match rng.gen_range(0..8) {
            0 => M::Top,
            1 => M::Bottom,
            _ => atom(rng),
        },
        2 => {
            if rng.gen_bool(0.5) {
                M::not(atom(rng))
            } else {
                let a = letter(rng);
                let leaf = random_nnf(rng, alphabet, props, nominals, 1);
                if rng.gen_bool(0.5) {
                    M::possibly(a, leaf)
                } else {
                    M::necessarily(a, leaf)
                }
            }
        }
        _ => match rng.gen_range(0..4) {
            0 | 1 => {
                let left = rng.gen_range(1..size - 1);
                let l = random_nnf(rng, alphabet, props, nominals, left);
                let r = random_nnf(rng, alphabet, props, nominals, size - 1 - left);
                if rng.gen_bool(0.5) {
                    M::and(l, r)
                } else {
                    M::or(l, r)
                }
            }
            k => {
                let a = letter(rng);
                let body = random_nnf(rng, alphabet, props, nominals, size - 1);
                if k == 2 {
                    M::possibly(a, body)
                } else {
                    M::necessarily(a, body)
                }
            }
        },
    }
}

/// Random IPL formula of depth at most `depth`.
pub fn random_ipl(rng: &mut impl Rng, props: &[&str], depth: usize) -> IplFormula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.15) { IplFormula::Bottom } else { IplFormula::prop(props.choose(rng).unwrap()) };
    }
    let l = random_ipl(rng, props, depth - 1);
    let r = random_ipl(rng, props, depth - 1);
    match rng.gen_range(0..4) {
        0 => IplFormula::and(l, r),
        1 => IplFormula::or(l, r),
        _ => IplFormula::implies(l, r),
    }
}

/// Random linear system over `a/A, b/B`: rules `a -> w a` or `a -> w`
/// with `w` a word over `b` and `B` of length at most 2. Automata are read
/// off the rules.
pub fn random_linear_logic(rng: &mut impl Rng, name: &str) -> Result<Logic, ShapeError> {
    let sigma = Alphabet::new([("a", "A"), ("b", "B")]).expect("valid alphabet");
    let a = Letter::forward(0);
    let terminals = [Letter::forward(1), Letter::forward(1).converse()];
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut w: Vec<Letter> = (0..rng.gen_range(0..=2)).map(|_| *terminals.choose(rng).unwrap()).collect();
        if rng.gen_bool(0.5) {
            w.push(a);
        }
        rules.push(Rule::new(a, Word::from(w)));
    }
    let system = SemiThueSystem::new(rules).converse_closure();
    let automata = (0..sigma.len())
        .map(|i| from_linear(&system, Letter::from_index(i), &sigma))
        .collect::<Result<Vec<_>, _>>()?;
    let automata = AutomataMap::new(&sigma, automata)?;
    Ok(Logic::new(name, sigma, system, automata))
}

/// Random frame; when `connected`, a random spanning tree is laid down
/// first so the underlying undirected graph is connected.
pub fn random_frame(rng: &mut impl Rng, worlds: usize, pairs: usize, density: f64, connected: bool) -> KripkeFrame {
    let mut f = crate::semantics::random_frame(rng, worlds, pairs, density);
    if connected && pairs > 0 {
        for w in 1..worlds {
            let u = rng.gen_range(0..w);
            let mut a = Letter::forward(rng.gen_range(0..pairs));
            if rng.gen_bool(0.5) {
                a = a.converse();
            }
            f.add_edge(a, u, w);
        }
    }
    f
}

/// Random valuation of `atoms` on `frame`, plus random worlds for
/// `nominals`.
pub fn random_model(rng: &mut impl Rng, frame: KripkeFrame, atoms: &[String], nominals: &[&str]) -> KripkeModel {
    let n = frame.worlds();
    let mut m = KripkeModel::new(frame);
    for p in atoms {
        let ext: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        m.set_prop(p, ext);
    }
    for c in nominals {
        m.nominals.insert(c.to_string(), rng.gen_range(0..n));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn formulas_have_requested_size_and_are_nnf() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sigma = Alphabet::new([("a", "A"), ("b", "B")]).unwrap();
        for size in 1..=12 {
            for _ in 0..20 {
                let f = random_nnf(&mut rng, &sigma, &["p", "q"], &["i"], size);
                assert_eq!(f.size(), size);
                assert!(f.is_nnf());
            }
        }
    }

    #[test]
    fn random_systems_are_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let logic = random_linear_logic(&mut rng, "r").unwrap();
            assert!(logic.system.is_closed_under_converse());
        }
    }

    #[test]
    fn connected_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert!(random_frame(&mut rng, 4, 2, 0.1, true).is_connected());
        }
    }
}
