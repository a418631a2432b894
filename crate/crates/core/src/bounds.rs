//! Evaluators for the rigorous bounds: the boundary-norm mutual information
//! bound, the power-law mutual information bound, the high-temperature
//! clustering bound with its threshold temperature, and the two-hop
//! coupling product lemma.

use faer::Mat;

use crate::ed::{heisenberg_boundary, MAX_SPIN_SITES};
use crate::error::{Error, Result};
use crate::lattice::{Bipartition, Lattice};
use crate::linalg::singular_values;
use crate::models::{CouplingTable, SingleParticleHamiltonian};

/// Constants entering the bounds. `c` is the unspecified order-one constant
/// of the clustering and area-law theorems; it is always supplied by the
/// caller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub g: f64,
    pub k: usize,
    pub d0: usize,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl BoundParams {
    /// Two-local spin-1/2 (or spinless fermion) defaults with `g = 1`, `C = 1`.
    pub fn two_local(alpha: f64, beta: f64) -> Result<Self> {
        BoundParams {
            g: 1.0,
            k: 2,
            d0: 2,
            c: 1.0,
            alpha,
            beta,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        let bad = |what: &str, v: f64| Error::Validation(format!("{what} must be positive, got {v}"));
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err(bad("g", self.g));
        }
        if self.k < 2 {
            return Err(Error::Validation(format!("locality k must be at least 2, got {}", self.k)));
        }
        if self.d0 < 1 {
            return Err(Error::Validation("local dimension must be positive".into()));
        }
        if !(self.c >= 0.0 && self.c.is_finite()) {
            return Err(Error::Validation(format!("C must be nonnegative, got {}", self.c)));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(bad("alpha", self.alpha));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::Validation(format!("beta must be nonnegative, got {}", self.beta)));
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UVariant {
    Plain,
    /// Plain sum times `2^alpha`.
    #[default]
    Lemma,
}

impl std::str::FromStr for UVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(UVariant::Plain),
            "lemma" => Ok(UVariant::Lemma),
            other => Err(Error::Validation(format!("unknown u variant '{other}' (plain|lemma)"))),
        }
    }
}

impl std::fmt::Display for UVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            UVariant::Plain => "plain",
            UVariant::Lemma => "lemma",
        })
    }
}

/// `sum_j (1 + d_ij)^-alpha`, including `j = i`, optionally times `2^alpha`.
pub fn u_factor(lattice: &Lattice, alpha: f64, site: usize, variant: UVariant) -> Result<f64> {
    let n = lattice.num_sites();
    let mut sum = 0.0;
    for j in 0..n {
        sum += (1.0 + lattice.manhattan_distance(site, j)? as f64).powf(-alpha);
    }
    Ok(match variant {
        UVariant::Plain => sum,
        UVariant::Lemma => sum * 2f64.powf(alpha),
    })
}

/// Largest `u` over all sites of the lattice.
pub fn max_u_factor(lattice: &Lattice, alpha: f64, variant: UVariant) -> Result<f64> {
    (0..lattice.num_sites()).try_fold(0.0f64, |m, i| Ok(m.max(u_factor(lattice, alpha, i, variant)?)))
}

/// Whether the sum defining `u` stays bounded on the infinite lattice.
pub fn u_converges_on_infinite_lattice(dimension: usize, alpha: f64) -> bool {
    alpha > dimension as f64
}

/// Principal branch of Lambert W for `x >= 0`.
pub fn lambert_w(x: f64) -> Result<f64> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Validation(format!("lambert_w needs finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = x.ln_1p();
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let step = f / (ew * (w + 1.0));
        w -= step;
        if step.abs() <= 1e-16 * w.abs().max(1e-300) || f.abs() <= 1e-14 * x {
            break;
        }
    }
    let resid = (w * w.exp() - x).abs();
    if resid > 1e-12 * x.max(1.0) {
        return Err(Error::Numerical(format!("lambert_w({x}) did not converge (residual {resid:.3e})")));
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaC {
    /// `1 / (8 u g k)`.
    pub simple: f64,
    /// `W(1 / (u e)) / (2 g k)`.
    pub lambert: f64,
}

/// Threshold inverse temperatures below which clustering is guaranteed.
pub fn beta_c(params: &BoundParams, u: f64) -> Result<BetaC> {
    if !(u >= 1.0 && u.is_finite()) {
        return Err(Error::Validation(format!("u must be at least 1, got {u}")));
    }
    let gk = params.g * params.k as f64;
    let simple = 1.0 / (8.0 * u * gk);
    let lambert = lambert_w(1.0 / (u * std::f64::consts::E))? / (2.0 * gk);
    if lambert < simple * (1.0 - 1e-12) {
        return Err(Error::Numerical(format!(
            "Lambert threshold {lambert:.6e} fell below the simple threshold {simple:.6e}"
        )));
    }
    Ok(BetaC { simple, lambert })
}

/// `C |X| |Y| exp((|X| + |Y|) / k) / d^alpha`.
pub fn theorem2_rhs(params: &BoundParams, size_x: usize, size_y: usize, distance: f64) -> Result<f64> {
    if !(distance >= 1.0) {
        return Err(Error::Validation(format!("distance must be at least 1, got {distance}")));
    }
    let (x, y) = (size_x as f64, size_y as f64);
    Ok(params.c * x * y * ((x + y) / params.k as f64).exp() / distance.powf(params.alpha))
}

/// `beta d0^{2k} g C sum_{i in A, j in B} d_ij^{-2 alpha}`.
pub fn theorem1_rhs(lattice: &Lattice, partition: &Bipartition, params: &BoundParams) -> Result<f64> {
    let prefactor =
        params.beta * (params.d0 as f64).powi(2 * params.k as i32) * params.g * params.c;
    Ok(prefactor * lattice.boundary_double_sum(partition, 2.0 * params.alpha)?)
}

/// Whether the power-law bound is an area law (`2 alpha > D + 1`).
pub fn theorem1_area_law_regime(dimension: usize, alpha: f64) -> bool {
    2.0 * alpha > dimension as f64 + 1.0
}

/// Hamiltonians for which the boundary norm is implemented.
#[derive(Debug, Clone, Copy)]
pub enum WolfModel<'a> {
    Fermion(&'a SingleParticleHamiltonian),
    Heisenberg(&'a CouplingTable),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WolfBound {
    /// `2 beta ||H_dA||`, when the norm is computable.
    pub exact: Option<f64>,
    /// `2 beta sum_Z ||h_Z||` over the cross terms.
    pub triangle: f64,
}

impl WolfBound {
    /// The tightest available value.
    pub fn best(&self) -> f64 {
        self.exact.unwrap_or(self.triangle)
    }
}

/// `2 beta ||H_dA||` for the terms coupling `A` to `B`.
///
/// The fermion norm is exact at any size: the many-body norm of a
/// particle-conserving bilinear is the larger of its summed positive and
/// summed negative single-particle eigenvalues, and the off-diagonal block
/// form makes both equal to the nuclear norm of the cross block. The spin
/// norm is exact only up to the dense diagonalization cap.
pub fn wolf_rhs(model: WolfModel<'_>, partition: &Bipartition, beta: f64) -> Result<WolfBound> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::Validation(format!("beta must be nonnegative, got {beta}")));
    }
    let (a, b) = (partition.a(), partition.b());
    match model {
        WolfModel::Fermion(h) => {
            check_sites(partition, h.num_modes())?;
            let m = h.matrix();
            let cross = Mat::from_fn(a.len(), b.len(), |p, q| m[(a[p], b[q])]);
            let triangle: f64 = a.iter().flat_map(|&i| b.iter().map(move |&j| m[(i, j)].abs())).sum();
            let exact = if triangle == 0.0 {
                0.0
            } else {
                singular_values(crate::linalg::to_complex(cross.as_ref()).as_ref())?.iter().sum()
            };
            Ok(WolfBound {
                exact: Some(2.0 * beta * exact),
                triangle: 2.0 * beta * triangle,
            })
        }
        WolfModel::Heisenberg(table) => {
            check_sites(partition, table.num_sites())?;
            let triangle: f64 = table
                .entries()
                .iter()
                .filter(|&&(i, j, _)| partition.contains_a(i) != partition.contains_a(j))
                .map(|&(_, _, v)| 0.75 * v.abs())
                .sum();
            let exact = if table.num_sites() <= MAX_SPIN_SITES {
                Some(2.0 * beta * heisenberg_boundary(table, partition)?.operator_norm()?)
            } else {
                None
            };
            Ok(WolfBound {
                exact,
                triangle: 2.0 * beta * triangle,
            })
        }
    }
}

fn check_sites(partition: &Bipartition, n: usize) -> Result<()> {
    if partition.num_sites() != n {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} sites, model has {n}",
            partition.num_sites()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductLemmaReport {
    /// `max_{i,k} sum_j J_ij J_jk (1 + d_ik)^alpha / (g^2 u)`.
    pub max_ratio: f64,
    pub worst_pair: (usize, usize),
    pub u: f64,
    pub holds: bool,
}

/// Brute-force check of `sum_j J_ij J_jk <= g^2 u / (1 + d_ik)^alpha` for the
/// envelope-saturating couplings `J_ij = g / (1 + d_ij)^alpha`, with the
/// lemma-variant `u` maximized over sites.
pub fn product_lemma_check(lattice: &Lattice, alpha: f64, g: f64) -> Result<ProductLemmaReport> {
    if !(g > 0.0 && alpha > 0.0) {
        return Err(Error::Validation("g and alpha must be positive".into()));
    }
    let n = lattice.num_sites();
    let mut d = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = lattice.manhattan_distance(i, j)?;
        }
    }
    let j = Mat::from_fn(n, n, |i, k| g * (1.0 + d[i * n + k] as f64).powf(-alpha));
    let u = max_u_factor(lattice, alpha, UVariant::Lemma)?;
    let two_hop = &j * &j;
    let mut max_ratio = 0.0f64;
    let mut worst_pair = (0, 0);
    for k in 0..n {
        for i in 0..n {
            let r = two_hop[(i, k)] * (1.0 + d[i * n + k] as f64).powf(alpha) / (g * g * u);
            if r > max_ratio {
                max_ratio = r;
                worst_pair = (i, k);
            }
        }
    }
    Ok(ProductLemmaReport {
        max_ratio,
        worst_pair,
        u,
        holds: max_ratio <= 1.0 + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{heisenberg_couplings, CouplingSpec};

    #[test]
    fn u_examples() {
        let l = Lattice::chain(3).unwrap();
        assert!((u_factor(&l, 1.0, 1, UVariant::Plain).unwrap() - 2.0).abs() < 1e-15);
        let plain = u_factor(&l, 2.5, 0, UVariant::Plain).unwrap();
        let lemma = u_factor(&l, 2.5, 0, UVariant::Lemma).unwrap();
        assert!((lemma - 2f64.powf(2.5) * plain).abs() < 1e-13);
        assert!(!u_converges_on_infinite_lattice(2, 2.0));
        assert!(u_converges_on_infinite_lattice(1, 1.1));
    }

    #[test]
    fn lambert_identity() {
        for &x in &[1e-12, 1e-3, 0.1, 1.0 / std::f64::consts::E, 1.0, 7.5, 1e6] {
            let w = lambert_w(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.max(1.0), "x = {x}");
        }
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!(lambert_w(-0.1).is_err());
    }

    #[test]
    fn beta_c_examples() {
        let p = BoundParams::two_local(2.0, 1.0).unwrap();
        let b = beta_c(&p, 1.0).unwrap();
        assert!((b.simple - 0.0625).abs() < 1e-15);
        assert!(b.lambert >= b.simple);
        assert!(matches!(beta_c(&p, 0.5), Err(Error::Validation(_))));
    }

    #[test]
    fn clustering_bound_examples() {
        let p = BoundParams::two_local(2.0, 1.0).unwrap();
        assert!((theorem2_rhs(&p, 1, 1, 2.0).unwrap() - 1f64.exp() / 4.0).abs() < 1e-15);
        let q = BoundParams { alpha: 1.0, ..p };
        let r1 = theorem2_rhs(&q, 2, 3, 3.0).unwrap();
        let r2 = theorem2_rhs(&q, 2, 3, 6.0).unwrap();
        assert!((r1 - 2.0 * r2).abs() < 1e-14);
        assert_eq!(theorem2_rhs(&BoundParams { c: 0.0, ..p }, 1, 1, 2.0).unwrap(), 0.0);
        assert!(theorem2_rhs(&p, 1, 1, 0.0).is_err());
    }

    #[test]
    fn area_law_bound_zero_temperature_and_plateau() {
        let l = Lattice::chain(64).unwrap();
        let p = l.half_bipartition().unwrap();
        let params = BoundParams::two_local(1.5, 0.0).unwrap();
        assert_eq!(theorem1_rhs(&l, &p, &params).unwrap(), 0.0);
        let params = BoundParams { beta: 1.0, ..params };
        let small = theorem1_rhs(&l, &p, &params).unwrap();
        let l2 = Lattice::chain(128).unwrap();
        let big = theorem1_rhs(&l2, &l2.half_bipartition().unwrap(), &params).unwrap();
        assert!((big / small - 1.0).abs() < 0.1);
    }

    #[test]
    fn wolf_examples() {
        let table = CouplingTable::from_entries(2, vec![(0, 1, 1.3)]).unwrap();
        let p = Bipartition::new(2, vec![0]).unwrap();
        let w = wolf_rhs(WolfModel::Heisenberg(&table), &p, 0.7).unwrap();
        assert!((w.exact.unwrap() - 1.5 * 0.7 * 1.3).abs() < 1e-13);
        assert!((w.triangle - 1.5 * 0.7 * 1.3).abs() < 1e-13);

        let none = CouplingTable::from_entries(2, vec![]).unwrap();
        assert_eq!(wolf_rhs(WolfModel::Heisenberg(&none), &p, 1.0).unwrap().best(), 0.0);

        let m = Mat::from_fn(2, 2, |i, j| if i == j { 0.0 } else { -0.8 });
        let h = SingleParticleHamiltonian::from_matrix(m).unwrap();
        let w = wolf_rhs(WolfModel::Fermion(&h), &p, 1.0).unwrap();
        assert!((w.exact.unwrap() - 1.6).abs() < 1e-14);
    }

    #[test]
    fn wolf_exact_below_triangle() {
        let l = Lattice::chain(8).unwrap();
        let spec = CouplingSpec::new(1.2, crate::models::AmplitudeLaw::unit_interval(), 5).unwrap();
        let table = heisenberg_couplings(&l, &spec).unwrap();
        let p = l.half_bipartition().unwrap();
        let w = wolf_rhs(WolfModel::Heisenberg(&table), &p, 2.0).unwrap();
        assert!(w.exact.unwrap() <= w.triangle + 1e-12);
        let h = crate::models::hopping_matrix(&l, &spec).unwrap();
        let w = wolf_rhs(WolfModel::Fermion(&h), &p, 2.0).unwrap();
        assert!(w.exact.unwrap() <= w.triangle + 1e-12);
    }

    #[test]
    fn product_lemma_small_cases() {
        for alpha in [1.1, 2.0, 3.0] {
            let r = product_lemma_check(&Lattice::chain(16).unwrap(), alpha, 1.0).unwrap();
            assert!(r.holds && r.max_ratio < 1.0, "alpha {alpha}: {}", r.max_ratio);
        }
        assert!(product_lemma_check(&Lattice::chain(2).unwrap(), 2.0, 0.5).unwrap().holds);
    }
}
