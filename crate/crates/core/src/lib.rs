//! Exact multivariate Meixner, Charlier and Krawtchouk polynomials indexed by
//! partitions, for any rational multiplicity d > 0, together with a harness
//! that checks their identities.

pub mod cli;
pub mod cone;
pub mod error;
pub mod families;
pub mod jack;
pub mod partition;
pub mod rational;
pub mod symfun;
pub mod verify;

pub use cone::{Cone, ConeParams};
pub use error::{Error, Result};
pub use families::{Family, FamilyParams};
pub use jack::JackTable;
pub use partition::Partition;
pub use rational::Q;
pub use symfun::{SymPoly, TruncatedSeries};
pub use verify::VerificationReport;
