//! SSR logarithmic negativity of a fermionic Gaussian thermal state.
//!
//! First checks the Pfaffian pipeline against the dense partial time
//! reversal on a few modes, then prints the pipeline's intermediate
//! quantities and a size sweep.

use thermal_arealaw::ed::{dense_ssr_negativity, fermion_fock_oracle};
use thermal_arealaw::gaussian::thermal_correlation_matrix;
use thermal_arealaw::models::{hopping_matrix, AmplitudeLaw, CouplingSpec};
use thermal_arealaw::negativity::{ssr_negativity, ssr_negativity_detailed};
use thermal_arealaw::Lattice;

fn main() -> thermal_arealaw::Result<()> {
    let spec = CouplingSpec::new(0.8, AmplitudeLaw::unit_interval(), 3)?;

    let small = Lattice::chain(6)?;
    let half = small.half_bipartition()?;
    let h = hopping_matrix(&small, &spec)?;
    let pipeline = ssr_negativity(&thermal_correlation_matrix(&h, 2.0)?, &half)?;
    let dense = dense_ssr_negativity(fermion_fock_oracle(&h, 2.0)?.rho(), half.a())?;
    println!("6 modes: pipeline {pipeline:.12}  dense {dense:.12}  diff {:.2e}", (pipeline - dense).abs());

    let d = ssr_negativity_detailed(&thermal_correlation_matrix(&h, 2.0)?, &half)?;
    println!(
        "  prefactor: log|.| = {:.6}, phase = {:.3e}{:+.3e}i",
        d.prefactor.log_abs, d.prefactor.phase.re, d.prefactor.phase.im
    );
    println!("  covariance spectrum: {:?}", d.covariance_spectrum.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());

    for n in [16, 32, 64, 128] {
        let lattice = Lattice::chain(n)?;
        let c = thermal_correlation_matrix(&hopping_matrix(&lattice, &spec)?, 2.0)?;
        println!("N = {n:>4}  E_SSR = {:.6}", ssr_negativity(&c, &lattice.half_bipartition()?)?);
    }
    Ok(())
}
