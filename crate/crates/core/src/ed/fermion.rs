//! Fock-space oracle for quadratic fermion Hamiltonians.
//!
//! Builds `H = sum_ij h_ij c_i^dag c_j` on all `2^N` occupation states and
//! answers the same queries as the Gaussian module from the exact Gibbs
//! state.

use faer::Mat;

use crate::error::{Error, Result};
use crate::lattice::Bipartition;
use crate::models::SingleParticleHamiltonian;

use super::operator::{site_bit, BasisKind, DenseOperator};

/// Largest mode count accepted by [`fermion_fock_oracle`].
pub const MAX_FOCK_MODES: usize = 8;

/// Bits of the modes preceding `mode` (the Jordan–Wigner string).
#[inline]
fn string_mask(n: usize, mode: usize) -> usize {
    let all = (1usize << n) - 1;
    all ^ ((1usize << (n - mode)) - 1)
}

/// `c_mode |s>` as `(sign, t)`, or `None` if the mode is empty.
pub fn annihilate(n: usize, mode: usize, s: usize) -> Option<(f64, usize)> {
    let bit = site_bit(n, mode);
    if s & bit == 0 {
        return None;
    }
    let sign = if (s & string_mask(n, mode)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((sign, s ^ bit))
}

/// `c_mode^dag |s>` as `(sign, t)`, or `None` if the mode is occupied.
pub fn create(n: usize, mode: usize, s: usize) -> Option<(f64, usize)> {
    let bit = site_bit(n, mode);
    if s & bit != 0 {
        return None;
    }
    let sign = if (s & string_mask(n, mode)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((sign, s | bit))
}

/// `c_i^dag c_j |s>`.
pub fn hop(n: usize, i: usize, j: usize, s: usize) -> Option<(f64, usize)> {
    let (s1, t) = annihilate(n, j, s)?;
    let (s2, u) = create(n, i, t)?;
    Some((s1 * s2, u))
}

/// Many-body quadratic Hamiltonian, blocked by particle number.
pub fn quadratic_hamiltonian(h: &SingleParticleHamiltonian) -> Result<DenseOperator> {
    let n = h.num_modes();
    if n > MAX_FOCK_MODES {
        return Err(Error::Capacity {
            what: "fermion Fock-space oracle",
            requested: n,
            limit: MAX_FOCK_MODES,
            estimate: format!("2^{n} many-body states"),
        });
    }
    if n == 0 {
        return Err(Error::Validation("Fock oracle needs at least one mode".into()));
    }
    let m = h.matrix();
    DenseOperator::from_conserving_fn(n, BasisKind::Fermion, |s| {
        let mut col = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let v = m[(i, j)];
                if v != 0.0 {
                    if let Some((sign, t)) = hop(n, i, j, s) {
                        col.push((t, sign * v));
                    }
                }
            }
        }
        col
    })
}

/// Exact Gibbs state of a quadratic Hamiltonian with oracle queries.
#[derive(Debug, Clone)]
pub struct FermionOracle {
    rho: DenseOperator,
}

pub fn fermion_fock_oracle(h: &SingleParticleHamiltonian, beta: f64) -> Result<FermionOracle> {
    let hamiltonian = quadratic_hamiltonian(h)?;
    let rho = super::gibbs_state(&hamiltonian, beta)?;
    Ok(FermionOracle { rho })
}

impl FermionOracle {
    pub fn rho(&self) -> &DenseOperator {
        &self.rho
    }

    pub fn num_modes(&self) -> usize {
        self.rho.num_sites()
    }

    /// `C_ij = <c_i^dag c_j>`.
    pub fn correlations(&self) -> Mat<f64> {
        let n = self.num_modes();
        let dense = self.rho.to_dense();
        Mat::from_fn(n, n, |i, j| {
            (0..1usize << n)
                .filter_map(|s| hop(n, i, j, s).map(|(sign, t)| sign * dense[(s, t)]))
                .sum()
        })
    }

    /// Fermionic reduced state on `subset`, modes in ascending order.
    pub fn reduced_state(&self, subset: &[usize]) -> Result<DenseOperator> {
        super::reduced_state(&self.rho, subset)
    }

    pub fn entropy(&self, subset: &[usize]) -> Result<f64> {
        super::subsystem_entropy_ed(&self.rho, subset)
    }

    pub fn mutual_information(&self, partition: &Bipartition) -> Result<f64> {
        super::mutual_information_ed(&self.rho, partition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{fermi, thermal_correlation_matrix};

    #[test]
    fn anticommutation_on_two_modes() {
        // {c_0, c_1^dag} = 0 on every state.
        let n = 2;
        for s in 0..4 {
            let a = create(n, 1, s).and_then(|(x, t)| annihilate(n, 0, t).map(|(y, u)| (x * y, u)));
            let b = annihilate(n, 0, s).and_then(|(x, t)| create(n, 1, t).map(|(y, u)| (x * y, u)));
            match (a, b) {
                (Some((x, u)), Some((y, v))) => {
                    assert_eq!(u, v);
                    assert_eq!(x, -y);
                }
                (None, None) => {}
                _ => panic!("asymmetric action on {s}"),
            }
        }
    }

    #[test]
    fn single_mode_fermi_factor() {
        let h = SingleParticleHamiltonian::from_matrix(Mat::from_fn(1, 1, |_, _| 0.7)).unwrap();
        let o = fermion_fock_oracle(&h, 2.0).unwrap();
        assert!((o.correlations()[(0, 0)] - fermi(1.4)).abs() < 1e-14);
    }

    #[test]
    fn dimer_matches_gaussian() {
        let m = Mat::from_fn(2, 2, |i, j| if i == j { 0.0 } else { -1.0 });
        let h = SingleParticleHamiltonian::from_matrix(m).unwrap();
        let o = fermion_fock_oracle(&h, 1.5).unwrap();
        let c = thermal_correlation_matrix(&h, 1.5).unwrap();
        assert!((o.correlations() - c.matrix()).norm_max() < 1e-13);
    }

    #[test]
    fn capacity() {
        let h = SingleParticleHamiltonian::from_matrix(Mat::zeros(9, 9)).unwrap();
        assert!(matches!(fermion_fock_oracle(&h, 1.0), Err(Error::Capacity { .. })));
    }
}
