use std::collections::BTreeMap;

use crate::automata::AutomataMap;
use crate::error::TranslateError;
use crate::syntax::{Alphabet, ModalFormula};
use crate::translate::box_automaton;

/// State predicates introduced for one box subformula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateFamily {
    pub id: usize,
    /// Name of the box letter.
    pub letter: String,
    /// Rendered box subformula, for listings.
    pub label: String,
    /// Predicate name per automaton state index.
    pub names: Vec<String>,
}

/// Predicate and constant names used by a translation.
///
/// Names are `p_<p>` for propositions, `r_<a>` for forward letters,
/// `q_<a>_<state>_<box>` for automaton states, and `n_<n>` for nominals.
/// The prefixes keep the families disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    props: BTreeMap<String, String>,
    relations: Vec<(String, String)>,
    boxes: Vec<StateFamily>,
    nominals: BTreeMap<String, String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_prop(&mut self, p: &str) -> String {
        self.props.entry(p.to_string()).or_insert_with(|| format!("p_{p}")).clone()
    }

    pub fn add_relation(&mut self, letter: &str) -> String {
        if let Some((_, name)) = self.relations.iter().find(|(l, _)| l == letter) {
            return name.clone();
        }
        let name = format!("r_{letter}");
        self.relations.push((letter.to_string(), name.clone()));
        name
    }

    pub fn add_nominal(&mut self, n: &str) -> String {
        self.nominals.entry(n.to_string()).or_insert_with(|| format!("n_{n}")).clone()
    }

    /// Registers the next box id with `states` state predicates.
    pub fn add_box(&mut self, letter: &str, label: String, states: usize) -> usize {
        let id = self.boxes.len();
        let names = (0..states).map(|q| format!("q_{letter}_{q}_{id}")).collect();
        self.boxes.push(StateFamily { id, letter: letter.to_string(), label, names });
        id
    }

    pub fn prop(&self, p: &str) -> Option<&str> {
        self.props.get(p).map(String::as_str)
    }

    pub fn relation(&self, letter: &str) -> Option<&str> {
        self.relations.iter().find(|(l, _)| l == letter).map(|(_, n)| n.as_str())
    }

    pub fn nominal(&self, n: &str) -> Option<&str> {
        self.nominals.get(n).map(String::as_str)
    }

    pub fn state(&self, box_id: usize, q: usize) -> Option<&str> {
        self.boxes.get(box_id).and_then(|b| b.names.get(q)).map(String::as_str)
    }

    pub fn props(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.props.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.relations.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn nominals(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.nominals.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn boxes(&self) -> &[StateFamily] {
        &self.boxes
    }

    /// Every predicate name with its arity, sorted by name.
    pub fn predicates(&self) -> Vec<(&str, usize)> {
        let mut out: Vec<(&str, usize)> = self.props.values().map(|n| (n.as_str(), 1)).collect();
        out.extend(self.relations.iter().map(|(_, n)| (n.as_str(), 2)));
        out.extend(self.boxes.iter().flat_map(|b| b.names.iter().map(|n| (n.as_str(), 1))));
        out.sort();
        out
    }

    /// One line per symbol, stable for a given table.
    pub fn listing(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for (p, name) in &self.props {
            lines.push(format!("prop {p} -> {name}"));
        }
        for (a, name) in &self.relations {
            lines.push(format!("letter {a} -> {name}"));
        }
        for (n, name) in &self.nominals {
            lines.push(format!("nominal {n} -> {name}"));
        }
        for b in &self.boxes {
            lines.push(format!("box {} {}: {}", b.id, b.label, b.names.join(" ")));
        }
        lines
    }
}

/// Symbol table for translating `phi`: every proposition and nominal of
/// `phi`, every forward letter of the alphabet, and one state family per
/// distinct box subformula in postorder.
pub fn fresh_table(
    phi: &ModalFormula,
    alphabet: &Alphabet,
    automata: &AutomataMap,
) -> Result<SymbolTable, TranslateError> {
    let mut table = SymbolTable::new();
    for p in phi.props() {
        table.add_prop(&p);
    }
    for a in alphabet.forward_letters() {
        table.add_relation(alphabet.name(a));
    }
    for n in phi.nominals() {
        table.add_nominal(&n);
    }
    for b in phi.box_subformulas() {
        let name = alphabet.name(b.letter);
        let m = automata
            .get(b.letter)
            .ok_or_else(|| TranslateError::MissingAutomaton(name.to_string()))?;
        let states = box_automaton(m).state_count();
        table.add_box(name, b.formula().render(alphabet), states);
    }
    Ok(table)
}
