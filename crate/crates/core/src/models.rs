//! The two concrete long-range Hamiltonians and their random-coupling ensembles.
//!
//! * Bilinear fermions: `H = sum_{i<j} h_ij (c_i^dag c_j + h.c.)` with
//!   `h_ij = -t_ij / d_ij^alpha`.
//! * Heisenberg chain: `H = sum_{i<j} J_ij S_i . S_j` with
//!   `J_ij = a_ij / d_ij^alpha`.
//!
//! Amplitudes `t_ij` and `a_ij` come either from a fixed value or from a
//! uniform interval keyed on the unordered pair (see [`crate::seed`]).

use faer::Mat;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::seed::pair_uniform;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmplitudeLaw {
    Fixed(f64),
    Uniform { low: f64, high: f64 },
}

impl AmplitudeLaw {
    pub fn unit_interval() -> Self {
        AmplitudeLaw::Uniform {
            low: 0.0,
            high: 1.0,
        }
    }

    fn draw(&self, seed: u64, i: usize, j: usize) -> f64 {
        match *self {
            AmplitudeLaw::Fixed(v) => v,
            AmplitudeLaw::Uniform { low, high } => low + (high - low) * pair_uniform(seed, i, j),
        }
    }

    /// Largest amplitude the law can produce.
    pub fn max_abs(&self) -> f64 {
        match *self {
            AmplitudeLaw::Fixed(v) => v.abs(),
            AmplitudeLaw::Uniform { low, high } => low.abs().max(high.abs()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSpec {
    pub alpha: f64,
    pub amplitude: AmplitudeLaw,
    pub seed: u64,
}

impl CouplingSpec {
    pub fn new(alpha: f64, amplitude: AmplitudeLaw, seed: u64) -> Result<Self> {
        let spec = CouplingSpec {
            alpha,
            amplitude,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn fixed(alpha: f64, value: f64) -> Result<Self> {
        Self::new(alpha, AmplitudeLaw::Fixed(value), 0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::Validation(format!(
                "alpha must be positive and finite, got {}",
                self.alpha
            )));
        }
        match self.amplitude {
            AmplitudeLaw::Fixed(v) if !v.is_finite() => {
                Err(Error::Validation("fixed amplitude must be finite".into()))
            }
            AmplitudeLaw::Uniform { low, high }
                if !(low.is_finite() && high.is_finite() && low <= high) =>
            {
                Err(Error::Validation(format!(
                    "uniform interval [{low}, {high}] is not a finite ordered interval"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// Real symmetric single-particle hopping matrix with a zero diagonal.
#[derive(Debug, Clone)]
pub struct SingleParticleHamiltonian {
    matrix: Mat<f64>,
}

impl SingleParticleHamiltonian {
    /// Wraps an explicit matrix; it must be square and exactly symmetric.
    pub fn from_matrix(matrix: Mat<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Dimension(format!(
                "hopping matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n = matrix.nrows();
        for j in 0..n {
            for i in 0..j {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(Error::Validation(format!(
                        "hopping matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(SingleParticleHamiltonian { matrix })
    }

    pub fn matrix(&self) -> &Mat<f64> {
        &self.matrix
    }

    pub fn num_modes(&self) -> usize {
        self.matrix.nrows()
    }

    /// Bond strengths `J_ij = |h_ij|` (the norm of `h_ij (c_i^dag c_j + h.c.)`).
    pub fn pair_strengths(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.num_modes();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.matrix[(i, j)].abs())))
    }
}

/// Builds `h_ij = -t_ij / d_ij^alpha` with Manhattan `d_ij`.
pub fn hopping_matrix(lattice: &Lattice, spec: &CouplingSpec) -> Result<SingleParticleHamiltonian> {
    spec.validate()?;
    let n = lattice.num_sites();
    let mut m = Mat::<f64>::zeros(n, n);
    for j in 0..n {
        for i in 0..j {
            let d = lattice.manhattan_unchecked(i, j) as f64;
            let v = -spec.amplitude.draw(spec.seed, i, j) / d.powf(spec.alpha);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(SingleParticleHamiltonian { matrix: m })
}

/// Heisenberg exchange couplings `J_ij` for `i < j` on an open chain.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    num_sites: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl CouplingTable {
    /// Builds a table from explicit `(i, j, J)` triples with `i < j`.
    pub fn from_entries(num_sites: usize, mut entries: Vec<(usize, usize, f64)>) -> Result<Self> {
        for &(i, j, v) in &entries {
            if i >= j || j >= num_sites {
                return Err(Error::Validation(format!(
                    "coupling ({i},{j}) must satisfy i < j < {num_sites}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Validation(format!("coupling ({i},{j}) is not finite")));
            }
        }
        entries.sort_by_key(|&(i, j, _)| (i, j));
        if entries.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::Validation("duplicate coupling pair".into()));
        }
        Ok(CouplingTable { num_sites, entries })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.entries
            .binary_search_by_key(&key, |&(a, b, _)| (a, b))
            .map(|k| self.entries[k].2)
            .unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `J_ij = a_ij / (j - i)^alpha` on a chain.
pub fn heisenberg_couplings(lattice: &Lattice, spec: &CouplingSpec) -> Result<CouplingTable> {
    spec.validate()?;
    if lattice.dimension() != 1 {
        return Err(Error::UnsupportedGeometry(
            "the Heisenberg model is only implemented on 1D chains".into(),
        ));
    }
    let n = lattice.num_sites();
    let entries = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let d = (j - i) as f64;
            (i, j, spec.amplitude.draw(spec.seed, i, j) / d.powf(spec.alpha))
        })
        .collect();
    Ok(CouplingTable {
        num_sites: n,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    pub holds: bool,
    /// Pair with the largest `J_ij (1 + d_ij)^alpha / g`, if any pair exists.
    pub worst_pair: Option<(usize, usize)>,
    pub worst_ratio: f64,
}

/// Checks `J_ij <= g / (1 + d_ij)^alpha` over the given pair strengths.
pub fn coupling_envelope_check(
    lattice: &Lattice,
    pairs: impl IntoIterator<Item = (usize, usize, f64)>,
    g: f64,
    alpha: f64,
) -> Result<EnvelopeReport> {
    if !(g > 0.0) {
        return Err(Error::Validation(format!("g must be positive, got {g}")));
    }
    let mut worst_pair = None;
    let mut worst_ratio = 0.0f64;
    for (i, j, strength) in pairs {
        let d = lattice.manhattan_distance(i, j)? as f64;
        let ratio = strength.abs() * (1.0 + d).powf(alpha) / g;
        if worst_pair.is_none() || ratio > worst_ratio {
            worst_ratio = ratio;
            worst_pair = Some((i, j));
        }
    }
    Ok(EnvelopeReport {
        holds: worst_ratio <= 1.0 + 1e-12,
        worst_pair,
        worst_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimer_and_trimer_entries() {
        let spec = CouplingSpec::fixed(2.0, 1.0).unwrap();
        let h = hopping_matrix(&Lattice::chain(2).unwrap(), &spec).unwrap();
        assert_eq!(h.matrix()[(0, 1)], -1.0);
        assert_eq!(h.matrix()[(1, 0)], -1.0);
        assert_eq!(h.matrix()[(0, 0)], 0.0);

        let spec = CouplingSpec::fixed(1.0, 1.0).unwrap();
        let h = hopping_matrix(&Lattice::chain(3).unwrap(), &spec).unwrap();
        assert_eq!(h.matrix()[(0, 2)], -0.5);
    }

    #[test]
    fn random_hopping_is_symmetric_bounded_and_reproducible() {
        let lattice = Lattice::square(5).unwrap();
        let spec = CouplingSpec::new(1.5, AmplitudeLaw::unit_interval(), 99).unwrap();
        let h1 = hopping_matrix(&lattice, &spec).unwrap();
        let h2 = hopping_matrix(&lattice, &spec).unwrap();
        let n = lattice.num_sites();
        for i in 0..n {
            assert_eq!(h1.matrix()[(i, i)], 0.0);
            for j in 0..n {
                assert_eq!(h1.matrix()[(i, j)].to_bits(), h2.matrix()[(i, j)].to_bits());
                assert_eq!(h1.matrix()[(i, j)], h1.matrix()[(j, i)]);
                if i != j {
                    let d = lattice.manhattan_distance(i, j).unwrap() as f64;
                    assert!(h1.matrix()[(i, j)].abs() <= 1.0 / d.powf(1.5));
                }
            }
        }
        let other = CouplingSpec { seed: 100, ..spec };
        let h3 = hopping_matrix(&lattice, &other).unwrap();
        assert_ne!(h1.matrix()[(0, 1)], h3.matrix()[(0, 1)]);
    }

    #[test]
    fn heisenberg_examples() {
        let spec = CouplingSpec::fixed(3.0, 1.0).unwrap();
        let t = heisenberg_couplings(&Lattice::chain(2).unwrap(), &spec).unwrap();
        assert_eq!(t.get(0, 1), 1.0);
        let spec = CouplingSpec::fixed(2.0, 1.0).unwrap();
        let t = heisenberg_couplings(&Lattice::chain(3).unwrap(), &spec).unwrap();
        assert_eq!(t.get(0, 2), 0.25);
        assert_eq!(t.get(2, 0), 0.25);
        assert!(matches!(
            heisenberg_couplings(&Lattice::square(3).unwrap(), &spec),
            Err(Error::UnsupportedGeometry(_))
        ));
    }

    #[test]
    fn random_heisenberg_is_reproducible_and_nonnegative() {
        let spec = CouplingSpec::new(0.8, AmplitudeLaw::unit_interval(), 5).unwrap();
        let lattice = Lattice::chain(10).unwrap();
        let a = heisenberg_couplings(&lattice, &spec).unwrap();
        let b = heisenberg_couplings(&lattice, &spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.entries().len(), 45);
        assert!(a.entries().iter().all(|&(_, _, v)| v >= 0.0));
    }

    #[test]
    fn envelope_examples() {
        let lattice = Lattice::chain(12).unwrap();
        let spec = CouplingSpec::fixed(2.0, 1.0).unwrap();
        let table = heisenberg_couplings(&lattice, &spec).unwrap();
        // (1+d)^2/d^2 peaks at d = 1 with value 4.
        let ok = coupling_envelope_check(&lattice, table.entries().iter().copied(), 4.0, 2.0).unwrap();
        assert!(ok.holds);
        assert!((ok.worst_ratio - 1.0).abs() < 1e-12);
        let bad = coupling_envelope_check(&lattice, table.entries().iter().copied(), 1.0, 2.0).unwrap();
        assert!(!bad.holds);
        assert!((bad.worst_ratio - 4.0).abs() < 1e-12);
        let (i, j) = bad.worst_pair.unwrap();
        assert_eq!(j - i, 1);

        let empty = coupling_envelope_check(&lattice, std::iter::empty(), 1.0, 2.0).unwrap();
        assert!(empty.holds);
        assert_eq!(empty.worst_pair, None);
    }

    #[test]
    fn hopping_envelope_needs_two_to_the_alpha() {
        let lattice = Lattice::chain(8).unwrap();
        let alpha = 1.5;
        let h = hopping_matrix(&lattice, &CouplingSpec::fixed(alpha, 1.0).unwrap()).unwrap();
        let r = coupling_envelope_check(&lattice, h.pair_strengths(), 1.0, alpha).unwrap();
        assert!((r.worst_ratio - 2f64.powf(alpha)).abs() < 1e-12);
        let r = coupling_envelope_check(&lattice, h.pair_strengths(), 2f64.powf(alpha), alpha).unwrap();
        assert!(r.holds);
    }
}
