//! SSR logarithmic negativity for fermionic Gaussian states.

pub mod pfaffian;
pub mod ssr;

pub use pfaffian::{log_pfaffian, pfaffian, LogPfaffian, SkewMatrix};
pub use ssr::{
    gamma_from_correlations, negativity_from_gamma, reversal_matrix, ssr_negativity,
    ssr_negativity_detailed, ssr_transform, GammaMatrix, NegativityDiagnostics, SsrIntermediates,
};
