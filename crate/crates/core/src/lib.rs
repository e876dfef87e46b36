//! A workbench for Kripke semantics of fuzzy and superintuitionistic logics.
//!
//! Formulas and schemes live in [`formula`], finite frames in [`kripke`] and
//! forcing in [`semantics`]. [`axioms`] holds the scheme registry, [`witness`]
//! turns frame defects into countermodels and [`lab`] sweeps small frames to
//! check each correspondence claim.

pub mod axioms;
pub mod cli;
pub mod document;
pub mod formula;
pub mod kripke;
pub mod lab;
pub mod semantics;
pub mod witness;

pub use axioms::{get_scheme, UnknownScheme};
pub use document::{CountermodelDocument, ModelDocument, NodeNames};
pub use formula::{parse, parse_template, Formula, FormulaError, Instance, Scheme, SchemeKind};
pub use kripke::{Frame, KripkeError, NodeSet};
pub use lab::{verify_theorem, SweepConfig, SweepMode, TheoremId, VerificationReport};
pub use semantics::{
    frame_validates_scheme, model_validates_scheme, Model, SchemeVerdict, SemanticsError,
};
pub use witness::{
    build_countermodel, find_violation, witness, Condition, Countermodel, Theorem, ViolationWitness,
};
