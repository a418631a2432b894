//! Dense fermionic partial time reversal in the occupation basis.
//!
//! With the modes of `A` moved to the front, the coherent-state definition
//! of the transformation reduces on occupation-basis dyads to
//!
//! ```text
//! |n_A n_B><m_A m_B|  ->  i^{(|n_A|+|m_A|) mod 2} (-1)^{(|n_A|+|m_A|)(|n_B|+|m_B|)} |m_A n_B><n_A m_B|
//! ```
//!
//! where `|n|` counts occupied modes.

use faer::{c64, Mat};

use crate::error::{Error, Result};
use crate::linalg::singular_values;

use super::operator::{mode_permutation, BasisKind, DenseOperator};

pub const MAX_TIME_REVERSAL_MODES: usize = 6;

/// `rho^{R_A}` for a fermionic operator; rows and columns use the original
/// mode order.
pub fn dense_partial_time_reversal(rho: &DenseOperator, a: &[usize]) -> Result<Mat<c64>> {
    let n = rho.num_sites();
    if rho.kind() != BasisKind::Fermion {
        return Err(Error::Validation(
            "partial time reversal needs an operator in the fermionic occupation basis".into(),
        ));
    }
    if n > MAX_TIME_REVERSAL_MODES {
        return Err(Error::Capacity {
            what: "dense partial time reversal",
            requested: n,
            limit: MAX_TIME_REVERSAL_MODES,
            estimate: format!("{}x{} complex matrix and SVD", 1usize << n, 1usize << n),
        });
    }
    let mut a_sorted = a.to_vec();
    a_sorted.sort_unstable();
    a_sorted.dedup();
    if let Some(&bad) = a_sorted.iter().find(|&&m| m >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    let n_a = a_sorted.len();
    let mut order = a_sorted.clone();
    order.extend((0..n).filter(|m| !a_sorted.contains(m)));

    let reordered = rho.reorder_modes(&order)?.to_dense();
    let dim = 1usize << n;
    let b_mask = (1usize << (n - n_a)) - 1;
    let a_mask = (dim - 1) ^ b_mask;
    let mut out = Mat::<c64>::zeros(dim, dim);
    for t in 0..dim {
        for s in 0..dim {
            let v = reordered[(s, t)];
            if v == 0.0 {
                continue;
            }
            let ta = (s & a_mask).count_ones() + (t & a_mask).count_ones();
            let tb = (s & b_mask).count_ones() + (t & b_mask).count_ones();
            let mut phase = if ta % 2 == 1 { c64::new(0.0, 1.0) } else { c64::new(1.0, 0.0) };
            if (ta * tb) % 2 == 1 {
                phase = -phase;
            }
            let ket = (t & a_mask) | (s & b_mask);
            let bra = (s & a_mask) | (t & b_mask);
            out[(ket, bra)] += phase * v;
        }
    }
    // Back to the caller's mode order.
    Ok(inverse_reorder(n, &order, &out))
}

fn inverse_reorder(n: usize, order: &[usize], m: &Mat<c64>) -> Mat<c64> {
    let perm = mode_permutation(n, order);
    let dim = 1usize << n;
    Mat::from_fn(dim, dim, |s, t| {
        let (ns, ss) = perm[s];
        let (nt, st) = perm[t];
        m[(ns, nt)] * (ss * st)
    })
}

/// `||M||_1`, the sum of singular values.
pub fn trace_norm(m: &Mat<c64>) -> Result<f64> {
    Ok(singular_values(m.as_ref())?.iter().sum())
}

/// `ln ||rho^{R_A}||_1`.
pub fn dense_ssr_negativity(rho: &DenseOperator, a: &[usize]) -> Result<f64> {
    Ok(trace_norm(&dense_partial_time_reversal(rho, a)?)?.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed::fermion::fermion_fock_oracle;
    use crate::models::SingleParticleHamiltonian;

    fn two_dimers() -> SingleParticleHamiltonian {
        let mut h = Mat::<f64>::zeros(4, 4);
        for (i, j, t) in [(0, 1, 0.7), (2, 3, -1.3)] {
            h[(i, j)] = t;
            h[(j, i)] = t;
        }
        SingleParticleHamiltonian::from_matrix(h).unwrap()
    }

    #[test]
    fn empty_subsystem_keeps_trace_norm_one() {
        let rho = fermion_fock_oracle(&two_dimers(), 1.5).unwrap();
        let r = dense_partial_time_reversal(rho.rho(), &[]).unwrap();
        assert!((trace_norm(&r).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decoupled_cut_has_no_negativity() {
        let rho = fermion_fock_oracle(&two_dimers(), 3.0).unwrap();
        assert!(dense_ssr_negativity(rho.rho(), &[0, 1]).unwrap().abs() < 1e-9);
        assert!(dense_ssr_negativity(rho.rho(), &[1, 2]).unwrap() > 1e-3);
    }

    #[test]
    fn single_particle_bell_pair() {
        // (|10> + |01>) / sqrt 2
        let mut m = Mat::<f64>::zeros(4, 4);
        for s in [1, 2] {
            for t in [1, 2] {
                m[(s, t)] = 0.5;
            }
        }
        let rho = DenseOperator::from_dense(2, BasisKind::Fermion, &m).unwrap();
        let e = dense_ssr_negativity(&rho, &[0]).unwrap();
        assert!((e - std::f64::consts::LN_2).abs() < 1e-12, "{e}");
    }

    #[test]
    fn rejects_spin_operators_and_large_inputs() {
        let spin = DenseOperator::from_dense(1, BasisKind::Spin, &Mat::identity(2, 2)).unwrap();
        assert!(matches!(dense_partial_time_reversal(&spin, &[0]), Err(Error::Validation(_))));
        let big = DenseOperator::from_dense(7, BasisKind::Fermion, &Mat::identity(128, 128)).unwrap();
        assert!(matches!(dense_partial_time_reversal(&big, &[0]), Err(Error::Capacity { .. })));
    }
}
