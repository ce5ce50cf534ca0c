//! Finite Kripke and first-order models, frame closure, and bounded model
//! finding.

pub mod closure;
pub mod extract;
pub mod fo_model;
pub mod frame_file;
pub mod ground;
pub mod kripke;
pub mod sample;
pub mod sat;

pub use closure::{closure_naive, closure_paths};
pub use extract::extract_modal_model;
pub use fo_model::{eval_fo, Assignment, FoModel};
pub use ground::{bounded_fo_sat, FoSat, FoSolution, DEFAULT_CONFLICT_CAP};
pub use kripke::{eval_modal, KripkeFrame, KripkeModel, Relation};
pub use sample::{random_frame, sample_kripke_models};
