use thiserror::Error;

/// A syntax error in a formula, grammar file, frame file, or regex.
///
/// `line` and `column` are 1-based; zero means the position is unknown
/// (for instance when a name is rejected after tokenization).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", self.render())]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }

    pub fn msg(message: impl Into<String>) -> Self {
        ParseError::new(0, 0, message)
    }

    /// Attaches a position if none is set yet.
    pub fn at(mut self, line: usize, column: usize) -> Self {
        if self.line == 0 {
            self.line = line;
            self.column = column;
        }
        self
    }

    fn render(&self) -> String {
        if self.line == 0 {
            self.message.clone()
        } else {
            format!("line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

/// A rule set that does not have the linear shape an automaton can be
/// read off from, or a letter left without an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct ShapeError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula is not in negation normal form: {0}")]
    NotNnf(String),
    #[error("no automaton for letter `{0}`")]
    MissingAutomaton(String),
    #[error("t_letter needs two distinct variables")]
    SameVariables,
    #[error("automaton body must have exactly the free variable {expected}, found {found}")]
    WrongFreeVariable { expected: String, found: String },
    #[error("nominal `{0}` found but nominal mode is off")]
    NominalsDisabled(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("world {0} is outside the model")]
    UnknownWorld(usize),
    #[error("nominal `{0}` has no assigned world")]
    UnassignedNominal(String),
    #[error("symbol `{0}` is not interpreted by the model")]
    Uninterpreted(String),
    #[error("variable {0} is unassigned")]
    UnassignedVariable(String),
    #[error("modal index {0} has no relation in the model")]
    UnknownIndex(usize),
}

/// Top-level error for loaders and the command line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("shape error: {0}")]
    Shape(#[from] ShapeError),
    #[error("translation error: {0}")]
    Translate(#[from] TranslateError),
    #[error("evaluation error: {0}")]
    Eval(#[from] EvalError),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}
