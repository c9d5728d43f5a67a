//! Matrix coefficients of the quantum loop algebra action on the finite
//! fixed-point basis and of the quantum toroidal action on the affine one,
//! together with the tangent-weight recomputation of the affine entries and
//! the specialization to integrable modules.

mod error;
pub mod finite;
mod module;
pub mod oracle;
pub mod specialization;
pub mod toroidal;

pub use error::ActionError;
pub use finite::FiniteAction;
pub use module::{psi_mode_of, FactorList, GradedVector, LoopModule, Pattern, PsiSign, Transition, XKind};
pub use toroidal::AffineAction;
