//! Exact diagonalization on small lattices.
//!
//! Everything here is dense and exact: Heisenberg Gibbs states, thermofield
//! doubles, connected correlators, and the Fock-space and partial-time-
//! reversal oracles used to certify the Gaussian pipelines.

pub mod fermion;
pub mod operator;
pub mod spin;
pub mod tfd;
pub mod time_reversal;

use faer::c64;

use crate::error::{Error, Result};
use crate::gaussian::MutualInformation;
use crate::lattice::Bipartition;

pub use fermion::{fermion_fock_oracle, quadratic_hamiltonian, FermionOracle, MAX_FOCK_MODES};
pub use operator::{BasisKind, Block, DenseOperator, Spectrum};
pub use spin::{conserves_magnetization, heisenberg_boundary, heisenberg_dense, MAX_SPIN_SITES};
pub use tfd::{tfd_entanglement_entropy, tfd_state, TfdState, MAX_TFD_SITES};
pub use time_reversal::{dense_partial_time_reversal, dense_ssr_negativity, trace_norm, MAX_TIME_REVERSAL_MODES};

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::Validation(format!(
            "inverse temperature must be finite and nonnegative, got {beta}"
        )));
    }
    Ok(())
}

/// `exp(-beta H) / tr exp(-beta H)`, block by block.
pub fn gibbs_state(h: &DenseOperator, beta: f64) -> Result<DenseOperator> {
    check_beta(beta)?;
    let asym = h.hermiticity_error();
    if asym > 1e-12 * h.blocks().iter().map(|b| b.matrix.norm_max()).fold(1.0, f64::max) {
        return Err(Error::Validation(format!(
            "Hamiltonian is not symmetric (|H - H^T| = {asym:.3e})"
        )));
    }
    let spectrum = h.eigen()?;
    let e0 = spectrum.ground_energy();
    let z: f64 = spectrum
        .blocks()
        .iter()
        .flat_map(|b| b.values.iter())
        .map(|&e| (-beta * (e - e0)).exp())
        .sum();
    Ok(spectrum.map(|e| (-beta * (e - e0)).exp() / z))
}

/// Reduced state on `subset`. Fermionic operators are first relabelled so
/// the kept modes come first, which makes the qubit partial trace the
/// fermionic one.
pub fn reduced_state(rho: &DenseOperator, subset: &[usize]) -> Result<DenseOperator> {
    let n = rho.num_sites();
    let mut keep = subset.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    match rho.kind() {
        BasisKind::Spin => rho.partial_trace(&keep),
        BasisKind::Fermion => {
            let mut order = keep.clone();
            order.extend((0..n).filter(|m| !keep.contains(m)));
            let leading: Vec<usize> = (0..keep.len()).collect();
            rho.reorder_modes(&order)?.partial_trace(&leading)
        }
    }
}

pub fn subsystem_entropy_ed(rho: &DenseOperator, subset: &[usize]) -> Result<f64> {
    if subset.len() == rho.num_sites() {
        return rho.entropy();
    }
    reduced_state(rho, subset)?.entropy()
}

pub fn mutual_information_parts_ed(rho: &DenseOperator, partition: &Bipartition) -> Result<MutualInformation> {
    if partition.num_sites() != rho.num_sites() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} sites, state has {}",
            partition.num_sites(),
            rho.num_sites()
        )));
    }
    Ok(MutualInformation {
        entropy_a: subsystem_entropy_ed(rho, partition.a())?,
        entropy_b: subsystem_entropy_ed(rho, partition.b())?,
        entropy_ab: rho.entropy()?,
    })
}

/// `I(A:B)` of a dense state, clamped at zero.
pub fn mutual_information_ed(rho: &DenseOperator, partition: &Bipartition) -> Result<f64> {
    Ok(mutual_information_parts_ed(rho, partition)?.value())
}

/// 2x2 single-site matrix indexed by bit value: `op[row][col]`.
pub type SiteMatrix = [[c64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

/// Spin-1/2 component with bit 1 = up.
pub fn spin_component(axis: SpinAxis) -> SiteMatrix {
    let z = c64::new(0.0, 0.0);
    let h = c64::new(0.5, 0.0);
    match axis {
        SpinAxis::X => [[z, h], [h, z]],
        SpinAxis::Y => [[z, c64::new(0.0, 0.5)], [c64::new(0.0, -0.5), z]],
        SpinAxis::Z => [[-h, z], [z, h]],
    }
}

/// Tensor product of single-site operators on distinct sites.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    factors: Vec<(usize, SiteMatrix)>,
}

impl LocalOperator {
    pub fn new(mut factors: Vec<(usize, SiteMatrix)>) -> Result<Self> {
        factors.sort_by_key(|&(s, _)| s);
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Validation("local operator repeats a site".into()));
        }
        Ok(LocalOperator { factors })
    }

    pub fn site(site: usize, op: SiteMatrix) -> Self {
        LocalOperator {
            factors: vec![(site, op)],
        }
    }

    pub fn spin(site: usize, axis: SpinAxis) -> Self {
        Self::site(site, spin_component(axis))
    }

    pub fn support(&self) -> Vec<usize> {
        self.factors.iter().map(|&(s, _)| s).collect()
    }

    /// Product with an operator on a disjoint support.
    pub fn times(&self, other: &LocalOperator) -> Result<LocalOperator> {
        let theirs = other.support();
        if self.factors.iter().any(|(s, _)| theirs.contains(s)) {
            return Err(Error::Validation("operator supports overlap".into()));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().copied());
        LocalOperator::new(factors)
    }
}

/// `tr(rho O)` in the product basis.
pub fn expectation(rho: &DenseOperator, op: &LocalOperator) -> Result<c64> {
    let n = rho.num_sites();
    if let Some(&(bad, _)) = op.factors.iter().find(|&&(s, _)| s >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    let bits: Vec<(usize, &SiteMatrix)> = op
        .factors
        .iter()
        .map(|(s, m)| (operator::site_bit(n, *s), m))
        .collect();
    let mask: usize = bits.iter().map(|&(b, _)| b).sum();
    let mut acc = c64::new(0.0, 0.0);
    for b in rho.blocks() {
        for (q, &t) in b.basis.iter().enumerate() {
            for (p, &s) in b.basis.iter().enumerate() {
                let v = b.matrix[(p, q)];
                if v == 0.0 || (s ^ t) & !mask != 0 {
                    continue;
                }
                // rho[s,t] * O[t,s]
                let mut o = c64::new(1.0, 0.0);
                for &(bit, m) in &bits {
                    o *= m[usize::from(t & bit != 0)][usize::from(s & bit != 0)];
                }
                acc += o * v;
            }
        }
    }
    Ok(acc)
}

/// Connected correlator `<XY> - <X><Y>` for disjointly supported `X`, `Y`.
pub fn correlation_function_ed(rho: &DenseOperator, x: &LocalOperator, y: &LocalOperator) -> Result<f64> {
    let xy = x.times(y)?;
    let c = expectation(rho, &xy)? - expectation(rho, x)? * expectation(rho, y)?;
    if c.im.abs() > 1e-10 * c.re.abs().max(1.0) {
        return Err(Error::Numerical(format!(
            "correlator has imaginary part {:.3e}; operators are not Hermitian",
            c.im
        )));
    }
    Ok(c.re)
}

/// Connected `<S_i . S_j>`, summed over the three spin components.
pub fn spin_correlation(rho: &DenseOperator, i: usize, j: usize) -> Result<f64> {
    [SpinAxis::X, SpinAxis::Y, SpinAxis::Z]
        .into_iter()
        .map(|a| correlation_function_ed(rho, &LocalOperator::spin(i, a), &LocalOperator::spin(j, a)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::CouplingTable;

    fn pair() -> DenseOperator {
        heisenberg_dense(&CouplingTable::from_entries(2, vec![(0, 1, 1.0)]).unwrap()).unwrap()
    }

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        let rho = gibbs_state(&pair(), 0.0).unwrap();
        let d = rho.to_dense();
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { 0.25 } else { 0.0 };
                assert!((d[(i, j)] - e).abs() < 1e-15);
            }
        }
        let p = Bipartition::new(2, vec![0]).unwrap();
        assert!(mutual_information_ed(&rho, &p).unwrap() < 1e-14);
    }

    #[test]
    fn singlet_weight() {
        let beta = 1.3;
        let rho = gibbs_state(&pair(), beta).unwrap();
        // Singlet (|01> - |10>)/sqrt2: weight = <singlet|rho|singlet>.
        let d = rho.to_dense();
        let w = 0.5 * (d[(1, 1)] + d[(2, 2)] - d[(1, 2)] - d[(2, 1)]);
        let expected = (0.75 * beta).exp() / ((0.75 * beta).exp() + 3.0 * (-0.25 * beta).exp());
        assert!((w - expected).abs() < 1e-14);
        assert!((rho.trace() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn low_temperature_singlet_mutual_information() {
        let rho = gibbs_state(&pair(), 60.0).unwrap();
        let p = Bipartition::new(2, vec![0]).unwrap();
        let i = mutual_information_ed(&rho, &p).unwrap();
        assert!((i - 2.0 * 2f64.ln()).abs() < 1e-12);
        // Singlet: <S0.S1> = -3/4 and single-site expectations vanish.
        assert!((spin_correlation(&rho, 0, 1).unwrap() + 0.75).abs() < 1e-12);
    }

    #[test]
    fn gibbs_commutes_with_h() {
        let table = CouplingTable::from_entries(4, vec![(0, 1, 1.0), (1, 3, -0.4), (0, 2, 0.7), (2, 3, 0.2)]).unwrap();
        let h = heisenberg_dense(&table).unwrap();
        let rho = gibbs_state(&h, 1.1).unwrap();
        let (hd, rd) = (h.to_dense(), rho.to_dense());
        assert!((&hd * &rd - &rd * &hd).norm_max() < 1e-10);
        assert!(conserves_magnetization(&rho));
    }

    #[test]
    fn overlapping_supports_rejected() {
        let rho = gibbs_state(&pair(), 1.0).unwrap();
        let x = LocalOperator::spin(0, SpinAxis::Z);
        assert!(matches!(correlation_function_ed(&rho, &x, &x), Err(Error::Validation(_))));
    }

    #[test]
    fn tfd_limits() {
        let table = CouplingTable::from_entries(4, vec![(0, 1, 1.0), (1, 2, 0.5), (2, 3, 1.0), (0, 3, 0.3)]).unwrap();
        let h = heisenberg_dense(&table).unwrap();
        let p = Bipartition::new(4, vec![0, 1]).unwrap();
        // beta = 0: Bell pairs across the copies, so A_L A_R is pure.
        assert!(tfd_entanglement_entropy(&h, 0.0, &p).unwrap().abs() < 1e-10);
        let state = tfd_state(&h, 2.0).unwrap();
        assert!((state.norm() - 1.0).abs() < 1e-12);
        let e = state.entanglement_entropy(&p).unwrap();
        let rho = gibbs_state(&h, 2.0).unwrap();
        let i = mutual_information_ed(&rho, &p).unwrap();
        assert!(i <= 2.0 * e + 1e-10);
        let single = Bipartition::new(4, vec![2]).unwrap();
        assert!(state.entanglement_entropy(&single).unwrap() <= 2.0 * 2f64.ln() + 1e-12);
    }
}
