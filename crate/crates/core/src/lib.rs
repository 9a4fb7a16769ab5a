//! Exact checks of the Terracini property for zero-dimensional schemes of
//! double points, with constructions, witness searches and a verification
//! harness.

pub mod cohomology;
pub mod constructions;
pub mod critical;
pub mod harness;
pub mod linalg;
pub mod oracles;
pub mod parallel;
pub mod projgeom;
pub mod schemes;
pub mod seed;
pub mod terracini;
pub mod witness;

pub use cohomology::{cohomology, condition_rows, CohomologyReport};
pub use critical::{find_critical, CriticalScheme};
pub use linalg::{Matrix, PrimeField};
pub use parallel::Exec;
pub use projgeom::{Point, Subspace};
pub use schemes::{Component, ZeroDimScheme};
pub use terracini::{is_minimally_terracini, MembershipCertificate};
