use crate::automata::AutomataMap;
use crate::syntax::{Alphabet, SemiThueSystem};

/// A regular grammar logic: alphabet, converse-closed rules, and one
/// automaton per letter recognizing its derivation language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Logic {
    pub name: String,
    pub alphabet: Alphabet,
    pub system: SemiThueSystem,
    pub automata: AutomataMap,
}

impl Logic {
    pub fn new(name: &str, alphabet: Alphabet, system: SemiThueSystem, automata: AutomataMap) -> Self {
        Logic { name: name.to_string(), alphabet, system, automata }
    }
}
