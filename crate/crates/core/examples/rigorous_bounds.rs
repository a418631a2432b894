//! Evaluates the rigorous bounds on a chain and a square lattice.

use thermal_arealaw::bounds::{
    beta_c, max_u_factor, product_lemma_check, theorem1_area_law_regime, theorem1_rhs, theorem2_rhs, BoundParams,
    UVariant,
};
use thermal_arealaw::Lattice;

fn main() -> thermal_arealaw::Result<()> {
    for lattice in [Lattice::chain(128)?, Lattice::square(12)?] {
        let d = lattice.dimension();
        let half = lattice.half_bipartition()?;
        println!("D = {d}, {} sites", lattice.num_sites());
        for alpha in [1.1, 2.0, 3.0] {
            let params = BoundParams::two_local(alpha, 0.1)?;
            let u = max_u_factor(&lattice, alpha, UVariant::Lemma)?;
            let bc = beta_c(&params, u)?;
            let lemma = product_lemma_check(&lattice, alpha, params.g)?;
            println!(
                "  alpha {alpha}: u = {u:.4}, beta_c = {:.3e} (Lambert {:.3e}), I <= {:.4e}{}, lemma ratio {:.3}",
                bc.simple,
                bc.lambert,
                theorem1_rhs(&lattice, &half, &params)?,
                if theorem1_area_law_regime(d, alpha) { " [area law]" } else { "" },
                lemma.max_ratio
            );
            println!("    |Cor(X,Y)| <= {:.4e} at d = 8 for single sites", theorem2_rhs(&params, 1, 1, 8.0)?);
        }
    }
    Ok(())
}
