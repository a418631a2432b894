//! Power-law clustering of free-fermion thermal correlations on a chain.
//!
//! Averages `r^alpha |<c_i^dag c_{i+r}>|` over a few random hopping samples;
//! a flat profile in `r` is the clustering signature.

use thermal_arealaw::gaussian::{thermal_correlation_matrix, two_point_sweep};
use thermal_arealaw::models::{hopping_matrix, AmplitudeLaw, CouplingSpec};
use thermal_arealaw::seed::sample_seed;
use thermal_arealaw::Lattice;

fn main() -> thermal_arealaw::Result<()> {
    let lattice = Lattice::chain(200)?;
    let origin = 50;
    let offsets: Vec<[isize; 2]> = (1..=100).map(|r| [r, 0]).collect();
    let samples = 20;

    for alpha in [0.5, 1.5, 3.0] {
        let mut mean = vec![0.0; offsets.len()];
        for k in 0..samples {
            let spec = CouplingSpec::new(alpha, AmplitudeLaw::unit_interval(), sample_seed(7, k))?;
            let c = thermal_correlation_matrix(&hopping_matrix(&lattice, &spec)?, 2.0)?;
            for (m, p) in mean.iter_mut().zip(two_point_sweep(&c, &lattice, origin, &offsets, alpha)?) {
                *m += p.scaled / samples as f64;
            }
        }
        println!("alpha = {alpha}");
        for r in [1usize, 5, 10, 25, 50, 100] {
            println!("  r = {r:>3}   r^alpha |C| = {:.5}", mean[r - 1]);
        }
    }
    Ok(())
}
