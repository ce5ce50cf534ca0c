use std::collections::{BTreeSet, VecDeque};

use super::ndfa::{Ndfa, Transition};
use crate::error::ShapeError;
use crate::syntax::{Alphabet, Letter, Rule, SemiThueSystem};

/// Letters that occur as the left-hand side of some rule.
pub fn nonterminals(system: &SemiThueSystem) -> BTreeSet<Letter> {
    system.rules().map(|r| r.lhs).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Right,
    Left,
}

/// Splits a rule body into its terminal part (in reading order for the
/// right-linear construction) and its trailing nonterminal.
fn split(rule: &Rule, v: &BTreeSet<Letter>, side: Side) -> Option<(Vec<Letter>, Option<Letter>)> {
    let mut letters = rule.rhs.letters().to_vec();
    if side == Side::Left {
        letters.reverse();
    }
    let tail = match letters.last() {
        Some(l) if v.contains(l) => {
            let l = *l;
            letters.pop();
            Some(l)
        }
        _ => None,
    };
    if letters.iter().any(|l| v.contains(l)) {
        return None;
    }
    Some((letters, tail))
}

fn build(system: &SemiThueSystem, letter: Letter, alphabet: &Alphabet, side: Side) -> Result<Ndfa, ShapeError> {
    let mut v = nonterminals(system);
    v.insert(letter);
    let kind = if side == Side::Right { "right" } else { "left" };

    let mut states = vec!["acc".to_string()];
    let mut edges = Vec::new();
    let mut slot: Vec<Option<usize>> = vec![None; alphabet.len()];
    let mut queue = VecDeque::new();
    let visit = |n: Letter, slot: &mut Vec<Option<usize>>, states: &mut Vec<String>, queue: &mut VecDeque<Letter>| {
        if let Some(q) = slot[n.index()] {
            return q;
        }
        states.push(format!("s_{}", alphabet.name(n)));
        let q = states.len() - 1;
        slot[n.index()] = Some(q);
        queue.push_back(n);
        q
    };
    let start = visit(letter, &mut slot, &mut states, &mut queue);

    while let Some(n) = queue.pop_front() {
        let from = slot[n.index()].unwrap();
        edges.push(Transition { from, label: Some(n), to: 0 });
        for rule in system.rules_for(n) {
            let (terminals, tail) = split(rule, &v, side).ok_or_else(|| {
                ShapeError(format!("rule `{}` is not {kind}-linear", rule.render(alphabet)))
            })?;
            let target = match tail {
                Some(m) => visit(m, &mut slot, &mut states, &mut queue),
                None => 0,
            };
            if terminals.is_empty() {
                edges.push(Transition { from, label: None, to: target });
                continue;
            }
            let mut cur = from;
            for (i, &t) in terminals.iter().enumerate() {
                let next = if i + 1 == terminals.len() {
                    target
                } else {
                    states.push(format!("c{}", states.len()));
                    states.len() - 1
                };
                edges.push(Transition { from: cur, label: Some(t), to: next });
                cur = next;
            }
        }
    }
    let m = Ndfa::new(states, start, [0], edges).expect("indices stay in range");
    Ok(if side == Side::Left { m.reversed() } else { m })
}

/// Automaton for `L_S(letter)` when every rule reachable from `letter` has
/// the shape `N -> w M` or `N -> w` with `w` free of nonterminals. The
/// nonterminals are the letters that have rules, plus `letter` itself.
pub fn from_right_linear(system: &SemiThueSystem, letter: Letter, alphabet: &Alphabet) -> Result<Ndfa, ShapeError> {
    build(system, letter, alphabet, Side::Right)
}

/// Mirror of [`from_right_linear`] for rules `N -> M w` or `N -> w`.
pub fn from_left_linear(system: &SemiThueSystem, letter: Letter, alphabet: &Alphabet) -> Result<Ndfa, ShapeError> {
    build(system, letter, alphabet, Side::Left)
}

/// Tries the right-linear construction, then the left-linear one.
pub fn from_linear(system: &SemiThueSystem, letter: Letter, alphabet: &Alphabet) -> Result<Ndfa, ShapeError> {
    from_right_linear(system, letter, alphabet).or_else(|right| {
        from_left_linear(system, letter, alphabet).map_err(|left| {
            ShapeError(format!(
                "no automaton for `{}` and its rules are not linear: {right}; {left}",
                alphabet.name(letter)
            ))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Word;

    fn sigma() -> Alphabet {
        Alphabet::new([("a", "A"), ("b", "B")]).unwrap()
    }

    fn sys(s: &Alphabet, rules: &[(&str, &str)]) -> SemiThueSystem {
        SemiThueSystem::new(
            rules.iter().map(|(l, r)| Rule::new(s.letter(l).unwrap(), s.parse_word(r).unwrap())),
        )
    }

    fn oracle_agrees(s: &Alphabet, system: &SemiThueSystem, letter: &str, m: &Ndfa) {
        let x = Word::single(s.letter(letter).unwrap());
        for w in s.words_up_to(5) {
            assert_eq!(
                m.accepts(&w),
                system.derives_within(&x, &w, 8, 6),
                "{letter} vs {}",
                s.render_word(&w)
            );
        }
    }

    #[test]
    fn star_prefix_grammar() {
        let s = sigma();
        let system = sys(&s, &[("a", "b a"), ("a", "")]).converse_closure();
        let m = from_right_linear(&system, s.letter("a").unwrap(), &s).unwrap();
        assert!(m.accepts(&Word::empty()));
        assert!(m.accepts(&s.parse_word("b b").unwrap()));
        // a => b a in one step, so `b a` is in the derivation language
        assert!(m.accepts(&s.parse_word("b a").unwrap()));
        assert!(!m.accepts(&s.parse_word("a b").unwrap()));
        oracle_agrees(&s, &system, "a", &m);

        assert!(from_right_linear(&system, s.letter("A").unwrap(), &s).is_err());
        let big = from_left_linear(&system, s.letter("A").unwrap(), &s).unwrap();
        oracle_agrees(&s, &system, "A", &big);
    }

    #[test]
    fn single_terminal_rule_keeps_zero_step_word() {
        let s = sigma();
        let system = sys(&s, &[("a", "b")]);
        let m = from_right_linear(&system, s.letter("a").unwrap(), &s).unwrap();
        assert!(m.accepts(&s.parse_word("a").unwrap()));
        assert!(m.accepts(&s.parse_word("b").unwrap()));
        assert!(!m.accepts(&Word::empty()));
        oracle_agrees(&s, &system, "a", &m);
    }

    #[test]
    fn no_rules_is_the_letter_itself() {
        let s = sigma();
        let system = SemiThueSystem::default();
        let m = from_right_linear(&system, s.letter("b").unwrap(), &s).unwrap();
        oracle_agrees(&s, &system, "b", &m);
    }

    #[test]
    fn nonlinear_rule_is_named() {
        let s = sigma();
        let system = sys(&s, &[("a", "a a"), ("A", "A A")]);
        let err = from_linear(&system, s.letter("a").unwrap(), &s).unwrap_err();
        assert!(err.0.contains("a -> a a"), "{err}");
    }

    #[test]
    fn chains_through_other_nonterminals() {
        let s = sigma();
        let system = sys(&s, &[("a", "B b"), ("b", "B a"), ("b", "")]);
        let m = from_right_linear(&system, s.letter("a").unwrap(), &s).unwrap();
        oracle_agrees(&s, &system, "a", &m);
    }
}
