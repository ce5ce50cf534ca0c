//! Per-letter automata for derivation languages.

pub mod linear;
pub mod ndfa;
pub mod presets;
pub mod regex;
pub mod validate;

pub use linear::{from_left_linear, from_linear, from_right_linear};
pub use ndfa::{AutomataMap, Ndfa, Transition};
pub use presets::{standard_logic, PRESET_NAMES};
pub use regex::Regex;
pub use validate::{validate_against_system, ValidationReport, Violation};
