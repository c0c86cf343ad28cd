//! Machine checks of the identities satisfied by the polynomial families.
//!
//! Finite identities are checked in exact rational arithmetic; a case passes
//! only when its residual is the rational zero. Infinite sums are truncated at
//! several weights and compared in floating point.

pub mod conjecture;
pub mod consistency;
pub mod equations;
pub mod genfunc;
pub mod limits;
pub mod orthogonality;
pub mod report;

pub use conjecture::conjecture_suite;
pub use equations::{difference_equation, recurrence, Moving};
pub use genfunc::{
    genfunc_family, genfunc_grid, master_genfunc, orthogonality_generator, spherical_taylor, Master,
};
pub use limits::{limit_check, Limit};
pub use orthogonality::{
    orthogonality_krawtchouk, orthogonality_truncated, Truncated, TruncationPlan,
};
pub use report::{Case, Num, Summary, Truncation, VerificationReport};
