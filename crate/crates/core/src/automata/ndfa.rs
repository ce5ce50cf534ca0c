use std::collections::BTreeSet;

use crate::error::ShapeError;
use crate::syntax::{Alphabet, Letter, Word};

/// One edge `from -label-> to`; `label == None` is an ε-move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub label: Option<Letter>,
    pub to: usize,
}

/// Nondeterministic finite automaton with ε-moves over the letters of an
/// alphabet. States are named for rendering and for predicate naming but are
/// addressed by index everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ndfa {
    states: Vec<String>,
    start: usize,
    accepting: BTreeSet<usize>,
    transitions: Vec<Transition>,
}

impl Ndfa {
    pub fn new(
        states: Vec<String>,
        start: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self, ShapeError> {
        let n = states.len();
        if start >= n {
            return Err(ShapeError(format!("start state {start} out of range")));
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(&q) = accepting.iter().find(|&&q| q >= n) {
            return Err(ShapeError(format!("accepting state {q} out of range")));
        }
        let mut transitions: Vec<Transition> = transitions.into_iter().collect();
        if let Some(t) = transitions.iter().find(|t| t.from >= n || t.to >= n) {
            return Err(ShapeError(format!("transition {} -> {} out of range", t.from, t.to)));
        }
        let mut seen = BTreeSet::new();
        for name in &states {
            if !seen.insert(name) {
                return Err(ShapeError(format!("state `{name}` declared twice")));
            }
        }
        transitions.sort();
        transitions.dedup();
        Ok(Ndfa { states, start, accepting, transitions })
    }

    /// Builds from state names; panics on unknown names. Intended for
    /// hand-written automata such as the presets.
    pub fn from_names(
        states: &[&str],
        start: &str,
        accepting: &[&str],
        edges: &[(&str, Option<Letter>, &str)],
    ) -> Ndfa {
        let idx = |name: &str| {
            states
                .iter()
                .position(|s| *s == name)
                .unwrap_or_else(|| panic!("unknown state `{name}`"))
        };
        Ndfa::new(
            states.iter().map(|s| s.to_string()).collect(),
            idx(start),
            accepting.iter().map(|s| idx(s)),
            edges.iter().map(|&(f, label, t)| Transition { from: idx(f), label, to: idx(t) }),
        )
        .expect("hand-written automaton is well formed")
    }

    /// Two states and one edge: the language `{letter}`.
    pub fn single_letter(letter: Letter) -> Ndfa {
        Ndfa::from_names(&["q0", "q1"], "q0", &["q1"], &[("q0", Some(letter), "q1")])
    }

    /// One non-accepting state: the empty language.
    pub fn empty_language() -> Ndfa {
        Ndfa::from_names(&["q0"], "q0", &[], &[])
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    /// Sorted by `(from, label, to)` with ε-moves first for each source.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn letter_transitions(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter().filter(|t| t.label.is_some())
    }

    pub fn epsilon_transitions(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter().filter(|t| t.label.is_none())
    }

    /// `|Q| + |δ|`.
    pub fn size(&self) -> usize {
        self.states.len() + self.transitions.len()
    }

    /// Letters that label some transition.
    pub fn letters(&self) -> BTreeSet<Letter> {
        self.transitions.iter().filter_map(|t| t.label).collect()
    }

    pub fn epsilon_closure(&self, set: &mut [bool]) {
        let mut stack: Vec<usize> = (0..set.len()).filter(|&q| set[q]).collect();
        while let Some(q) = stack.pop() {
            for t in self.transitions.iter().filter(|t| t.from == q && t.label.is_none()) {
                if !set[t.to] {
                    set[t.to] = true;
                    stack.push(t.to);
                }
            }
        }
    }

    /// ε-closed set of states reached from `set` by one `letter` move.
    pub fn step(&self, set: &[bool], letter: Letter) -> Vec<bool> {
        let mut next = vec![false; self.states.len()];
        for t in &self.transitions {
            if t.label == Some(letter) && set[t.from] {
                next[t.to] = true;
            }
        }
        self.epsilon_closure(&mut next);
        next
    }

    pub fn initial_set(&self) -> Vec<bool> {
        let mut set = vec![false; self.states.len()];
        set[self.start] = true;
        self.epsilon_closure(&mut set);
        set
    }

    pub fn accepts(&self, word: &Word) -> bool {
        let mut set = self.initial_set();
        for &l in word.letters() {
            set = self.step(&set, l);
            if !set.iter().any(|&b| b) {
                return false;
            }
        }
        self.accepting.iter().any(|&q| set[q])
    }

    fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 1;
        while self.states.contains(&name) {
            name = format!("{base}{i}");
            i += 1;
        }
        name
    }

    /// Adds a fresh accepting state reached by ε from every old accepting
    /// state; the result has exactly one accepting state and the same
    /// language.
    pub fn normalize_single_accepting(&self) -> Ndfa {
        let mut states = self.states.clone();
        let fresh = states.len();
        states.push(self.fresh_name("qf"));
        let mut transitions = self.transitions.clone();
        transitions.extend(self.accepting.iter().map(|&q| Transition { from: q, label: None, to: fresh }));
        Ndfa::new(states, self.start, [fresh], transitions).expect("indices stay in range")
    }

    /// Reversal with each label mapped through `relabel`. When there is not
    /// exactly one accepting state a fresh start state with ε-moves to the
    /// old accepting states is added.
    fn reversed_with(&self, relabel: impl Fn(Letter) -> Letter) -> Ndfa {
        let mut states = self.states.clone();
        let mut transitions: Vec<Transition> = self
            .transitions
            .iter()
            .map(|t| Transition { from: t.to, label: t.label.map(&relabel), to: t.from })
            .collect();
        let start = if self.accepting.len() == 1 {
            *self.accepting.iter().next().unwrap()
        } else {
            let fresh = states.len();
            states.push(self.fresh_name("qs"));
            transitions.extend(self.accepting.iter().map(|&q| Transition { from: fresh, label: None, to: q }));
            fresh
        };
        Ndfa::new(states, start, [self.start], transitions).expect("indices stay in range")
    }

    /// Recognizes the mirror-image language `{ w reversed : w ∈ L }`.
    pub fn reversed(&self) -> Ndfa {
        self.reversed_with(|l| l)
    }

    /// Recognizes `{ converse(w) : w ∈ L }`.
    pub fn converse(&self) -> Ndfa {
        self.reversed_with(Letter::converse)
    }

    /// Automaton block in grammar-file syntax.
    pub fn render(&self, alphabet: &Alphabet, letter: Letter) -> String {
        let mut out = format!("automaton {} {{\n", alphabet.name(letter));
        out.push_str(&format!("  states: {};\n", self.states.join(" ")));
        out.push_str(&format!("  start: {};\n", self.states[self.start]));
        let finals: Vec<&str> = self.accepting.iter().map(|&q| self.states[q].as_str()).collect();
        out.push_str(&format!("  final: {};\n", finals.join(" ")));
        for t in &self.transitions {
            let label = t.label.map_or("eps", |l| alphabet.name(l));
            out.push_str(&format!("  {} -{}-> {};\n", self.states[t.from], label, self.states[t.to]));
        }
        out.push('}');
        out
    }
}

/// One automaton per letter of the alphabet, forward and backward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomataMap {
    automata: Vec<Ndfa>,
}

impl AutomataMap {
    /// `automata[i]` is the automaton of `Letter::from_index(i)`.
    pub fn new(alphabet: &Alphabet, automata: Vec<Ndfa>) -> Result<Self, ShapeError> {
        if automata.len() != alphabet.len() {
            return Err(ShapeError(format!(
                "expected {} automata, got {}",
                alphabet.len(),
                automata.len()
            )));
        }
        Ok(AutomataMap { automata })
    }

    /// Builds the map from automata for forward letters only; each backward
    /// letter gets the converse automaton of its partner.
    pub fn from_forward(forward: Vec<Ndfa>) -> Self {
        let automata = forward.into_iter().flat_map(|a| {
            let c = a.converse();
            [a, c]
        });
        AutomataMap { automata: automata.collect() }
    }

    pub fn get(&self, letter: Letter) -> Option<&Ndfa> {
        self.automata.get(letter.index())
    }

    pub fn len(&self) -> usize {
        self.automata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.automata.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, &Ndfa)> + '_ {
        self.automata.iter().enumerate().map(|(i, a)| (Letter::from_index(i), a))
    }

    /// Largest automaton size, the `m` of the size bound.
    pub fn max_size(&self) -> usize {
        self.automata.iter().map(Ndfa::size).max().unwrap_or(0)
    }

    pub fn total_size(&self) -> usize {
        self.automata.iter().map(Ndfa::size).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::new([("a", "A"), ("b", "B")]).unwrap()
    }

    fn two_finals(s: &Alphabet) -> Ndfa {
        let (a, b) = (s.letter("a").unwrap(), s.letter("b").unwrap());
        // a b* | b a
        Ndfa::from_names(
            &["s", "x", "y", "z"],
            "s",
            &["x", "z"],
            &[("s", Some(a), "x"), ("x", Some(b), "x"), ("s", Some(b), "y"), ("y", Some(a), "z")],
        )
    }

    #[test]
    fn accepts_follows_epsilon_moves() {
        let s = sigma();
        let a = s.letter("a").unwrap();
        let m = Ndfa::from_names(&["p", "q", "r"], "p", &["r"], &[("p", None, "q"), ("q", Some(a), "r")]);
        assert!(m.accepts(&s.parse_word("a").unwrap()));
        assert!(!m.accepts(&Word::empty()));
    }

    #[test]
    fn normalization_adds_one_state_and_keeps_language() {
        let s = sigma();
        let m = two_finals(&s);
        let n = m.normalize_single_accepting();
        assert_eq!(n.accepting().len(), 1);
        assert_eq!(n.state_count(), m.state_count() + 1);
        assert_eq!(n.epsilon_transitions().count(), 2);
        for w in s.words_up_to(5) {
            assert_eq!(m.accepts(&w), n.accepts(&w));
        }
        let e = Ndfa::empty_language().normalize_single_accepting();
        assert!(s.words_up_to(3).iter().all(|w| !e.accepts(w)));
    }

    #[test]
    fn single_accepting_input_still_gets_fresh_state() {
        let s = sigma();
        let m = Ndfa::single_letter(s.letter("a").unwrap());
        let n = m.normalize_single_accepting();
        assert_eq!(n.state_count(), 3);
        assert!(n.is_accepting(2));
    }

    #[test]
    fn converse_mirrors_language() {
        let s = sigma();
        let m = two_finals(&s);
        let c = m.converse();
        for w in s.words_up_to(4) {
            assert_eq!(m.accepts(&w), c.accepts(&w.converse()), "{}", s.render_word(&w));
        }
        assert_eq!(c.state_count(), m.state_count() + 1);
        assert_eq!(c.converse().state_count(), c.state_count());
    }

    #[test]
    fn from_forward_pairs_up() {
        let s = sigma();
        let map = AutomataMap::from_forward(vec![
            Ndfa::single_letter(s.letter("a").unwrap()),
            Ndfa::single_letter(s.letter("b").unwrap()),
        ]);
        assert_eq!(map.len(), 4);
        let big_a = map.get(s.letter("A").unwrap()).unwrap();
        assert!(big_a.accepts(&s.parse_word("A").unwrap()));
        assert!(!big_a.accepts(&s.parse_word("a").unwrap()));
    }
}
