use std::collections::VecDeque;

use super::kripke::KripkeFrame;
use crate::automata::AutomataMap;
use crate::syntax::SemiThueSystem;

/// Least extension of `frame` satisfying every rule of `system`, computed
/// by adding `R_u` to `R_a` for each rule `a -> u` until nothing changes.
pub fn closure_naive(frame: &KripkeFrame, system: &SemiThueSystem) -> KripkeFrame {
    let mut current = frame.clone();
    loop {
        let mut changed = false;
        for rule in system.rules() {
            let extra = current.word_relation(&rule.rhs);
            for (x, y) in extra.pairs() {
                changed |= current.add_edge(rule.lhs, x, y);
            }
        }
        if !changed {
            return current;
        }
    }
}

/// `R'_a(x, y)` iff some path from `x` to `y` spells a word accepted by the
/// automaton of `a`. Found by a search over (world, state) pairs.
pub fn closure_paths(frame: &KripkeFrame, automata: &AutomataMap) -> KripkeFrame {
    let n = frame.worlds();
    let mut out = frame.clone();
    for pair in 0..frame.pair_count() {
        let letter = crate::syntax::Letter::forward(pair);
        let m = automata.get(letter).expect("automaton for every letter");
        let states = m.state_count();
        for x in 0..n {
            let mut seen = vec![false; n * states];
            let mut queue = VecDeque::new();
            seen[x * states + m.start()] = true;
            queue.push_back((x, m.start()));
            while let Some((w, q)) = queue.pop_front() {
                if m.is_accepting(q) {
                    out.add_edge(letter, x, w);
                }
                for t in m.transitions().iter().filter(|t| t.from == q) {
                    let mut visit = |v: usize| {
                        if !seen[v * states + t.to] {
                            seen[v * states + t.to] = true;
                            queue.push_back((v, t.to));
                        }
                    };
                    match t.label {
                        None => visit(w),
                        Some(b) => frame.successors(b, w).for_each(&mut visit),
                    }
                }
            }
        }
    }
    out
}
