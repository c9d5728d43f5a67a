//! Entrywise verification of the loop and toroidal algebra relations on the
//! fixed-point modules, by exact symbolic identity or exact evaluation at
//! seeded rational points.

mod engine;
pub mod families;
pub mod gl;
mod report;
mod suites;
mod word;

pub use engine::verify_instances;
pub use report::{
    Counterexample, Family, ModuleKind, Mutation, RelationId, Scope, Status, Strategy, VerificationReport,
};
pub use suites::{loop_suite, mutation_controls, oracle_suite, toroidal_suite};
pub use word::{int, v_minus_vinv, vmono, Instance, Letter, Term};
