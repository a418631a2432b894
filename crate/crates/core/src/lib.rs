//! Numerical laboratory for thermal area laws in long-range interacting
//! lattice models.
//!
//! The crate is organised by capability:
//!
//! * [`lattice`]: open chains and square lattices, bipartitions, boundary sums.
//! * [`models`]: long-range bilinear fermions and the long-range Heisenberg
//!   chain, with seeded random-coupling ensembles.
//! * [`gaussian`]: free-fermion thermal correlation matrices, entropies and
//!   mutual information.
//! * [`negativity`]: Pfaffians and the SSR logarithmic negativity of
//!   fermionic Gaussian states.
//! * [`ed`]: exact diagonalization, thermofield doubles and the dense oracles
//!   that certify the Gaussian pipelines.
//! * [`bounds`]: evaluators for the rigorous correlation and mutual
//!   information bounds.
//! * [`harness`]: seeded ensemble experiments, presets and CSV output.

pub mod bounds;
pub mod ed;
pub mod error;
pub mod gaussian;
pub mod harness;
pub mod lattice;
pub mod linalg;
pub mod models;
pub mod negativity;
pub mod seed;

pub use error::{Error, Result};
pub use lattice::{Bipartition, Lattice, Metric};
pub use models::{AmplitudeLaw, CouplingSpec, CouplingTable, SingleParticleHamiltonian};
pub use gaussian::CorrelationMatrix;
