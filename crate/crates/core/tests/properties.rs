use faer::Mat;
use proptest::prelude::*;

use thermal_arealaw::ed::{
    conserves_magnetization, fermion_fock_oracle, gibbs_state, heisenberg_dense, mutual_information_parts_ed,
    subsystem_entropy_ed, DenseOperator,
};
use thermal_arealaw::gaussian::{mutual_information_parts, subsystem_entropy, thermal_correlation_matrix};
use thermal_arealaw::models::{heisenberg_couplings, hopping_matrix, AmplitudeLaw, CouplingSpec};
use thermal_arealaw::negativity::ssr_negativity;
use thermal_arealaw::{Bipartition, Lattice};

fn subset_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(0..n, 1..n).prop_map(|s| s.into_iter().collect())
}

/// `tr(rho H) - S(rho) / beta`.
fn free_energy(rho: &DenseOperator, h: &DenseOperator, beta: f64) -> f64 {
    rho.trace_product(h).unwrap() - rho.entropy().unwrap() / beta
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gaussian_matches_fock(seed in 0u64..10_000, alpha in 0.3f64..3.0, beta in 0.1f64..5.0, a in subset_strategy(6)) {
        let lattice = Lattice::chain(6).unwrap();
        let h = hopping_matrix(&lattice, &CouplingSpec::new(alpha, AmplitudeLaw::Uniform { low: -1.0, high: 1.0 }, seed).unwrap()).unwrap();
        let c = thermal_correlation_matrix(&h, beta).unwrap();
        let oracle = fermion_fock_oracle(&h, beta).unwrap();
        prop_assert!((oracle.correlations() - c.matrix()).norm_max() < 1e-10);
        prop_assert!((subsystem_entropy(&c, &a).unwrap() - oracle.entropy(&a).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn mutual_information_bounded_by_entropies(seed in 0u64..10_000, alpha in 0.3f64..3.0, a in subset_strategy(10)) {
        let lattice = Lattice::chain(10).unwrap();
        let part = Bipartition::new(10, a).unwrap();
        let h = hopping_matrix(&lattice, &CouplingSpec::new(alpha, AmplitudeLaw::unit_interval(), seed).unwrap()).unwrap();
        let mi = mutual_information_parts(&thermal_correlation_matrix(&h, 2.0).unwrap(), &part).unwrap();
        prop_assert!(mi.raw() >= -1e-10);
        prop_assert!(mi.raw() <= 2.0 * mi.entropy_a.min(mi.entropy_b) + 1e-10);
        let e = ssr_negativity(&thermal_correlation_matrix(&h, 2.0).unwrap(), &part).unwrap();
        prop_assert!(e >= 0.0 && e.is_finite());
    }

    #[test]
    fn heisenberg_gibbs_properties(seed in 0u64..10_000, alpha in 0.3f64..3.0, beta in 0.1f64..4.0, a in subset_strategy(6)) {
        let lattice = Lattice::chain(6).unwrap();
        let table = heisenberg_couplings(&lattice, &CouplingSpec::new(alpha, AmplitudeLaw::unit_interval(), seed).unwrap()).unwrap();
        let h = heisenberg_dense(&table).unwrap();
        prop_assert!(conserves_magnetization(&h));
        let rho = gibbs_state(&h, beta).unwrap();
        prop_assert!(conserves_magnetization(&rho));
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);

        let part = Bipartition::new(6, a).unwrap();
        let mi = mutual_information_parts_ed(&rho, &part).unwrap();
        prop_assert!(mi.raw() >= -1e-10);
        prop_assert!(mi.raw() <= 2.0 * mi.entropy_a.min(mi.entropy_b) + 1e-10);
        prop_assert!((subsystem_entropy_ed(&rho, part.a()).unwrap() - mi.entropy_a).abs() < 1e-12);

        // Gibbs variational principle against the product of marginals:
        // I <= beta (tr(H rho_A x rho_B) - tr(H rho)).
        let product = rho.product_of_marginals(part.a(), part.b()).unwrap();
        let excess = free_energy(&product, &h, beta) - free_energy(&rho, &h, beta);
        prop_assert!(excess >= -1e-10, "excess {excess}");
        let energy_gap = product.trace_product(&h).unwrap() - rho.trace_product(&h).unwrap();
        prop_assert!(mi.raw() <= beta * energy_gap + 1e-9);
    }
}

#[test]
fn infinite_temperature_is_maximally_mixed() {
    let lattice = Lattice::chain(5).unwrap();
    let table = heisenberg_couplings(&lattice, &CouplingSpec::fixed(1.0, 1.0).unwrap()).unwrap();
    let rho = gibbs_state(&heisenberg_dense(&table).unwrap(), 0.0).unwrap();
    let expected = Mat::<f64>::identity(32, 32) * faer::Scale(1.0 / 32.0);
    assert!((rho.to_dense() - expected).norm_max() < 1e-15);
    assert!((rho.entropy().unwrap() - 5.0 * std::f64::consts::LN_2).abs() < 1e-12);
}
