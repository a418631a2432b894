//! Fock-space oracle against the Gaussian pipelines on random small chains.

use thermal_arealaw::ed::{dense_ssr_negativity, fermion_fock_oracle};
use thermal_arealaw::gaussian::{gaussian_mutual_information, thermal_correlation_matrix};
use thermal_arealaw::models::{hopping_matrix, AmplitudeLaw, CouplingSpec};
use thermal_arealaw::negativity::ssr_negativity;
use thermal_arealaw::seed::sample_seed;
use thermal_arealaw::Lattice;

fn main() -> thermal_arealaw::Result<()> {
    let lattice = Lattice::chain(6)?;
    let half = lattice.half_bipartition()?;
    let (mut worst_c, mut worst_i, mut worst_e) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..10 {
        let spec = CouplingSpec::new(1.0, AmplitudeLaw::unit_interval(), sample_seed(99, k))?;
        let h = hopping_matrix(&lattice, &spec)?;
        let c = thermal_correlation_matrix(&h, 2.0)?;
        let oracle = fermion_fock_oracle(&h, 2.0)?;
        worst_c = worst_c.max((oracle.correlations() - c.matrix()).norm_max());
        worst_i = worst_i.max((gaussian_mutual_information(&c, &half)? - oracle.mutual_information(&half)?).abs());
        worst_e = worst_e.max((ssr_negativity(&c, &half)? - dense_ssr_negativity(oracle.rho(), half.a())?).abs());
    }
    println!("max |C_gauss - C_fock|   = {worst_c:.3e}");
    println!("max |I_gauss - I_fock|   = {worst_i:.3e}");
    println!("max |E_pfaff - E_dense|  = {worst_e:.3e}");
    Ok(())
}
