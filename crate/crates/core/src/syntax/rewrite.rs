use std::collections::{BTreeSet, HashSet, VecDeque};

use super::alphabet::{Alphabet, Letter, Word};

/// A context-free production rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Letter,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Letter, rhs: Word) -> Self {
        Rule { lhs, rhs }
    }

    /// The converse rule `ā -> v̄`.
    pub fn converse(&self) -> Rule {
        Rule { lhs: self.lhs.converse(), rhs: self.rhs.converse() }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.rhs.is_empty() {
            format!("{} ->", alphabet.name(self.lhs))
        } else {
            format!("{} -> {}", alphabet.name(self.lhs), alphabet.render_word(&self.rhs))
        }
    }
}

/// A finite context-free semi-Thue system. The alphabet lives alongside it
/// in [`crate::Logic`]; rules only carry letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SemiThueSystem {
    rules: BTreeSet<Rule>,
}

impl SemiThueSystem {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        SemiThueSystem { rules: rules.into_iter().collect() }
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    pub fn rules_for(&self, lhs: Letter) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter().filter(move |r| r.lhs == lhs)
    }

    pub fn has_rules_for(&self, lhs: Letter) -> bool {
        self.rules.iter().any(|r| r.lhs == lhs)
    }

    pub fn is_closed_under_converse(&self) -> bool {
        self.rules.iter().all(|r| self.rules.contains(&r.converse()))
    }

    /// The smallest converse-closed system containing this one.
    pub fn converse_closure(&self) -> SemiThueSystem {
        let mut rules = self.rules.clone();
        rules.extend(self.rules.iter().map(Rule::converse));
        SemiThueSystem { rules }
    }

    /// All `v` with `w ⇒ v` in one step.
    pub fn one_step_rewrites(&self, w: &Word) -> BTreeSet<Word> {
        let letters = w.letters();
        let mut out = BTreeSet::new();
        for (pos, &l) in letters.iter().enumerate() {
            for rule in self.rules_for(l) {
                let mut v = Vec::with_capacity(letters.len() + rule.rhs.len());
                v.extend_from_slice(&letters[..pos]);
                v.extend_from_slice(rule.rhs.letters());
                v.extend_from_slice(&letters[pos + 1..]);
                out.insert(Word::from(v));
            }
        }
        out
    }

    /// Whether `v` is reachable from `u` in at most `step_bound` rewrites
    /// without any intermediate word longer than `length_bound`.
    ///
    /// `false` only means "not found within the bounds".
    pub fn derives_within(&self, u: &Word, v: &Word, step_bound: usize, length_bound: usize) -> bool {
        if u == v {
            return true;
        }
        if u.len() > length_bound {
            return false;
        }
        let mut seen: HashSet<Word> = HashSet::from([u.clone()]);
        let mut queue = VecDeque::from([(u.clone(), 0usize)]);
        while let Some((w, depth)) = queue.pop_front() {
            if depth == step_bound {
                continue;
            }
            for next in self.one_step_rewrites(&w) {
                if next.len() > length_bound || seen.contains(&next) {
                    continue;
                }
                if &next == v {
                    return true;
                }
                seen.insert(next.clone());
                queue.push_back((next, depth + 1));
            }
        }
        false
    }

    /// Every word reachable from `u` within the same bounds as
    /// [`derives_within`](Self::derives_within), `u` included.
    pub fn reachable_within(&self, u: &Word, step_bound: usize, length_bound: usize) -> BTreeSet<Word> {
        let mut seen = BTreeSet::new();
        if u.len() > length_bound {
            return seen;
        }
        seen.insert(u.clone());
        let mut queue = VecDeque::from([(u.clone(), 0usize)]);
        while let Some((w, depth)) = queue.pop_front() {
            if depth == step_bound {
                continue;
            }
            for next in self.one_step_rewrites(&w) {
                if next.len() <= length_bound && seen.insert(next.clone()) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
        seen
    }

    pub fn render(&self, alphabet: &Alphabet) -> Vec<String> {
        self.rules.iter().map(|r| r.render(alphabet)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::new([("a", "A"), ("b", "B")]).unwrap()
    }

    fn rule(s: &Alphabet, lhs: &str, rhs: &str) -> Rule {
        Rule::new(s.letter(lhs).unwrap(), s.parse_word(rhs).unwrap())
    }

    fn w(s: &Alphabet, text: &str) -> Word {
        s.parse_word(text).unwrap()
    }

    #[test]
    fn converse_closure_examples() {
        let s = sigma();
        let trans = SemiThueSystem::new([rule(&s, "a", "a a")]).converse_closure();
        assert_eq!(trans, SemiThueSystem::new([rule(&s, "a", "a a"), rule(&s, "A", "A A")]));

        let sym = SemiThueSystem::new([rule(&s, "a", "A")]).converse_closure();
        assert_eq!(sym, SemiThueSystem::new([rule(&s, "a", "A"), rule(&s, "A", "a")]));
        assert_eq!(sym.converse_closure(), sym);
        assert!(sym.is_closed_under_converse());
    }

    #[test]
    fn euclidean_rule_converse_keeps_shape() {
        let s = sigma();
        let closed = SemiThueSystem::new([rule(&s, "a", "A a")]).converse_closure();
        assert!(closed.contains(&rule(&s, "A", "A a")));
    }

    #[test]
    fn one_step_examples() {
        let s = sigma();
        let trans = SemiThueSystem::new([rule(&s, "a", "a a")]);
        assert_eq!(trans.one_step_rewrites(&w(&s, "a")), BTreeSet::from([w(&s, "a a")]));
        assert!(trans.one_step_rewrites(&w(&s, "b")).is_empty());

        let refl = SemiThueSystem::new([rule(&s, "a", "")]);
        assert_eq!(refl.one_step_rewrites(&w(&s, "a a")), BTreeSet::from([w(&s, "a")]));
    }

    #[test]
    fn derives_within_examples() {
        let s = sigma();
        let s4 = SemiThueSystem::new([rule(&s, "a", ""), rule(&s, "a", "a a")]);
        assert!(s4.derives_within(&w(&s, "a"), &w(&s, "a a a"), 4, 6));
        assert!(!s4.derives_within(&w(&s, "a"), &w(&s, "A"), 6, 6));
        let x = w(&s, "a b A");
        assert!(s4.derives_within(&x, &x, 0, x.len()));
        // step bound is respected
        assert!(!s4.derives_within(&w(&s, "a"), &w(&s, "a a a"), 1, 6));
        // length bound is respected
        assert!(!s4.derives_within(&w(&s, "a"), &w(&s, "a a a"), 4, 2));
    }
}
