//! The first-order target: two-variable formulas, guardedness check,
//! symbol tables, and serializers.

pub mod formula;
pub mod sexp;
pub mod table;
pub mod tptp;

pub use formula::{Fo, Var, VarSet};
pub use sexp::to_sexp;
pub use table::{fresh_table, StateFamily, SymbolTable};
pub use tptp::{close, parse_tptp, to_tptp, Closure, Role};
