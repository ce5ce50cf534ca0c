use super::ndfa::AutomataMap;
use crate::syntax::{Alphabet, Letter, SemiThueSystem, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The automaton of `letter` rejects the one-letter word `letter`.
    MissingSelf { letter: Letter },
    /// `word` is accepted but its one-step rewrite `rewrite` is not.
    NotClosed { letter: Letter, word: Word, rewrite: Word },
    /// `word` is accepted but no derivation from `letter` was found within
    /// the bounds. Advisory only.
    Unconfirmed { letter: Letter, word: Word },
}

impl Violation {
    pub fn letter(&self) -> Letter {
        match self {
            Violation::MissingSelf { letter }
            | Violation::NotClosed { letter, .. }
            | Violation::Unconfirmed { letter, .. } => *letter,
        }
    }

    /// `true` for the findings that prove the automaton wrong, `false` for
    /// the advisory "unconfirmed" kind.
    pub fn is_error(&self) -> bool {
        !matches!(self, Violation::Unconfirmed { .. })
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            Violation::MissingSelf { letter } => {
                let name = alphabet.name(*letter);
                format!("error: {name}: automaton rejects `{name}`")
            }
            Violation::NotClosed { letter, word, rewrite } => format!(
                "error: {}: accepts `{}` but rejects its rewrite `{}`",
                alphabet.name(*letter),
                alphabet.render_word(word),
                alphabet.render_word(rewrite)
            ),
            Violation::Unconfirmed { letter, word } => format!(
                "warning: {}: accepts `{}` but no derivation was found within the bounds",
                alphabet.name(*letter),
                alphabet.render_word(word)
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.violations.iter().any(Violation::is_error)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.violations.is_empty() {
            return "no violations\n".to_string();
        }
        self.violations.iter().map(|v| v.render(alphabet) + "\n").collect()
    }
}

/// Extra length allowed for intermediate words when searching derivations.
pub const DERIVATION_SLACK: usize = 2;

/// Bounded check that each automaton recognizes the derivation language of
/// its letter. Only words up to `len_bound` are inspected, so a clean report
/// is evidence, not proof. Derivations may pass through words up to
/// [`DERIVATION_SLACK`] letters longer than `len_bound`.
pub fn validate_against_system(
    alphabet: &Alphabet,
    automata: &AutomataMap,
    system: &SemiThueSystem,
    len_bound: usize,
    step_bound: usize,
) -> ValidationReport {
    let mut violations = Vec::new();
    let words = alphabet.words_up_to(len_bound);
    for (letter, m) in automata.iter() {
        let x = Word::single(letter);
        if !m.accepts(&x) {
            violations.push(Violation::MissingSelf { letter });
        }
        for w in words.iter().filter(|w| m.accepts(w)) {
            for rewrite in system.one_step_rewrites(w) {
                if !m.accepts(&rewrite) {
                    violations.push(Violation::NotClosed { letter, word: w.clone(), rewrite });
                }
            }
            if !system.derives_within(&x, w, step_bound, len_bound + DERIVATION_SLACK) {
                violations.push(Violation::Unconfirmed { letter, word: w.clone() });
            }
        }
    }
    ValidationReport { violations }
}
