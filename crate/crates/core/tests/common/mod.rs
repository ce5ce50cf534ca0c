//! Shared seeded corpus for the integration tests and the acceptance run.
#![allow(dead_code)]

use gramlogic::automata::{standard_logic, PRESET_NAMES};
use gramlogic::corpus::{random_linear_logic, random_nnf};
use gramlogic::syntax::{Letter, ModalFormula};
use gramlogic::Logic;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PROPS: [&str; 2] = ["p", "q"];
pub const NOMINALS: [&str; 1] = ["n"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn presets() -> Vec<Logic> {
    PRESET_NAMES.iter().map(|n| standard_logic(n).unwrap()).collect()
}

pub struct Entry {
    pub logic: Logic,
    pub phi: ModalFormula,
    pub nominals: bool,
}

/// `count` (logic, formula) pairs: presets in rotation, every fourth entry
/// a random linear two-letter system, every third entry using nominals.
pub fn corpus(seed: u64, count: usize, max_size: usize) -> Vec<Entry> {
    let mut rng = rng(seed);
    let presets = presets();
    (0..count)
        .map(|i| {
            let logic = if i % 4 == 3 {
                random_linear_logic(&mut rng, &format!("random{i}")).unwrap()
            } else {
                presets[i % presets.len()].clone()
            };
            let nominals = i % 3 == 0;
            let noms: &[&str] = if nominals { &NOMINALS } else { &[] };
            let size = rng.gen_range(1..=max_size);
            let phi = random_nnf(&mut rng, &logic.alphabet, &PROPS, noms, size);
            Entry { logic, phi, nominals }
        })
        .collect()
}

/// Arbitrary formula (not necessarily in negation normal form) over one
/// letter pair and the given propositions.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, props: &[&str], pairs: usize, depth: usize) -> ModalFormula {
    use ModalFormula as M;
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => M::Top,
            1 => M::Bottom,
            _ => M::prop(props[rng.gen_range(0..props.len())]),
        };
    }
    let letter = Letter::from_index(rng.gen_range(0..2 * pairs));
    match rng.gen_range(0..6) {
        0 => M::not(random_formula(rng, props, pairs, depth - 1)),
        1 => M::and(random_formula(rng, props, pairs, depth - 1), random_formula(rng, props, pairs, depth - 1)),
        2 => M::or(random_formula(rng, props, pairs, depth - 1), random_formula(rng, props, pairs, depth - 1)),
        3 => M::implies(random_formula(rng, props, pairs, depth - 1), random_formula(rng, props, pairs, depth - 1)),
        4 => M::possibly(letter, random_formula(rng, props, pairs, depth - 1)),
        _ => M::necessarily(letter, random_formula(rng, props, pairs, depth - 1)),
    }
}
