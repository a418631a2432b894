//! Half-chain mutual information of the long-range hopping model versus
//! system size, below and above alpha = 1.

use thermal_arealaw::gaussian::{mutual_information_parts, thermal_correlation_matrix};
use thermal_arealaw::models::{hopping_matrix, AmplitudeLaw, CouplingSpec};
use thermal_arealaw::seed::sample_seed;
use thermal_arealaw::Lattice;

fn main() -> thermal_arealaw::Result<()> {
    let samples = 10;
    println!("{:>6} {:>6} {:>12} {:>12}", "alpha", "N", "I(A:B)", "S_AB");
    for alpha in [0.6, 1.5] {
        for n in [32, 64, 128, 256] {
            let lattice = Lattice::chain(n)?;
            let half = lattice.half_bipartition()?;
            let (mut i, mut s) = (0.0, 0.0);
            for k in 0..samples {
                let spec = CouplingSpec::new(alpha, AmplitudeLaw::unit_interval(), sample_seed(11, k))?;
                let c = thermal_correlation_matrix(&hopping_matrix(&lattice, &spec)?, 2.0)?;
                let parts = mutual_information_parts(&c, &half)?;
                i += parts.value();
                s += parts.entropy_ab;
            }
            println!("{alpha:>6} {n:>6} {:>12.6} {:>12.4}", i / samples as f64, s / samples as f64);
        }
    }
    Ok(())
}
