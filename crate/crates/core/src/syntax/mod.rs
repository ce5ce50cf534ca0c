//! Alphabets with converse, words, semi-Thue systems, and modal formulas.

pub mod alphabet;
pub mod formula;
pub mod lexer;
pub mod rewrite;

pub use alphabet::{Alphabet, Letter, Word};
pub use formula::{parse_modal, BoxSubformula, ModalFormula};
pub use rewrite::{Rule, SemiThueSystem};
