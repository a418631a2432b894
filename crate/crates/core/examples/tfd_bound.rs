//! Thermofield-double entanglement entropy versus Gibbs mutual information.

use thermal_arealaw::ed::{gibbs_state, heisenberg_dense, mutual_information_ed, tfd_state};
use thermal_arealaw::models::{heisenberg_couplings, AmplitudeLaw, CouplingSpec};
use thermal_arealaw::Lattice;

fn main() -> thermal_arealaw::Result<()> {
    let lattice = Lattice::chain(8)?;
    let half = lattice.half_bipartition()?;
    println!("{:>5} {:>6} {:>10} {:>10} {:>10}", "alpha", "beta", "E", "I", "2E - I");
    for alpha in [0.5, 2.0] {
        let table = heisenberg_couplings(&lattice, &CouplingSpec::new(alpha, AmplitudeLaw::unit_interval(), 4)?)?;
        let h = heisenberg_dense(&table)?;
        for beta in [0.0, 0.5, 2.0, 8.0] {
            let e = tfd_state(&h, beta)?.entanglement_entropy(&half)?;
            let i = mutual_information_ed(&gibbs_state(&h, beta)?, &half)?;
            println!("{alpha:>5} {beta:>6} {e:>10.5} {i:>10.5} {:>10.5}", 2.0 * e - i);
        }
    }
    Ok(())
}
