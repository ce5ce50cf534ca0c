//! Source languages other than grammar logics, and lowerings into other
//! target logics.

pub mod cpdl;
pub mod ipl;
pub mod ktu;

pub use cpdl::{eval_cpdl, ktu_to_cpdl, CpdlFormula, Program};
pub use ipl::{godel_s4, godel_s4_plain, ipl_to_gf2, parse_ipl, IplFormula};
pub use ktu::{canonical_renaming, eval_ktu, ktu_model, relational, to_ktu, KtuAtom, KtuFormula};
