//! Łukasiewicz-style proof and refutation systems for intermediate logics and
//! normal extensions of K4.
//!
//! The crate is organised around a small trusted checker ([`kernel`]). Every
//! other component (the intuitionistic prover, the symmetry transformer, the
//! axiomatizer) produces inferences that are validated by that checker, with
//! finite Kripke semantics ([`semantics`]) as the underivability oracle.

pub mod complete_sets;
pub mod formula;
pub mod fuzz;
pub mod kernel;
pub mod prover;
pub mod script;
pub mod semantics;
pub mod transforms;

pub use formula::{apply_substitution, match_instance, parse_formula, Formula, Mode, Substitution};
pub use prover::{derive_from_hypotheses, prove_ipc, HilbertDerivation, HilbertRule, HilbertStep, IpcOutcome, ProverBudget, ProverError};
pub use kernel::{
    apply_rule, check_inference, ipc_axioms, CheckError, CheckReport, DeductiveSystem, Inference, Justification,
    Reason, Rule, Sign, Statement,
};
