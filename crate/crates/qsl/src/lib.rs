//! A workbench for a modal logic of quantum superpositions.
//!
//! The object language extends propositional modal logic with a binary
//! superposition connective `*` and a unary measurement operator `M`,
//! both restricted to basic formulas (kets and stars of kets). Formulas
//! are evaluated over finite Kripke models whose valuations pass an
//! acceptability filter: a true superposition forces its components
//! false at the same world.
//!
//! The crate provides:
//!
//! * [`formula`] — AST, surface-syntax parser and printer;
//! * [`kripke`] — frames, frame classes, models, acceptability, and
//!   truth evaluation;
//! * [`validity`] — bounded countermodel search, semantic entailment
//!   and satisfiability;
//! * [`proofs`] — a Hilbert-style proof checker and a bundled theorem
//!   library;
//! * [`qdeduction`] — the three negations and the non-adjunctive
//!   quantum deduction relation;
//! * [`cli`] — the `qsl` command-line front end;
//! * [`suite`] — the acceptance battery run by `qsl suite`.

pub mod cli;
pub mod formula;
pub mod kripke;
pub mod proofs;
pub mod qdeduction;
pub mod suite;
pub mod validity;

pub use formula::{parse, parse_with, Formula, ParseError, Signature};
pub use kripke::{cat_model, check_frame_class, Frame, FrameClass, Model, ModelError};
pub use proofs::{check_proof, instantiate_axiom, theorem_library, ProofScript, SchemaId};
pub use qdeduction::{apply_negation, check_nonadjunction, quantum_derives, NegationKind};
pub use validity::{
    check_validity, entails, is_satisfiable, SatVerdict, SearchBound, Verdict,
};
