pub mod automata;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fo;
pub mod frontends;
pub mod grammar_file;
pub mod logic;
pub mod semantics;
pub mod syntax;
pub mod translate;

pub use error::{Error, EvalError, ParseError, ShapeError, TranslateError};
pub use logic::Logic;
