//! Seeded ensemble runs.

use std::time::Instant;

use rayon::prelude::*;

use crate::bounds::{
    beta_c, max_u_factor, product_lemma_check, theorem1_rhs, wolf_rhs, BoundParams, UVariant, WolfModel,
};
use crate::ed::{gibbs_state, heisenberg_dense, mutual_information_ed, dense_ssr_negativity, fermion_fock_oracle, tfd_state};
use crate::error::{Error, Result};
use crate::gaussian::{gaussian_mutual_information, thermal_correlation_matrix, two_point_sweep};
use crate::lattice::{Lattice, Offset};
use crate::models::{heisenberg_couplings, hopping_matrix, AmplitudeLaw, CouplingSpec};
use crate::negativity::ssr_negativity;
use crate::seed::sample_seed;

use super::config::{ExperimentConfig, ExperimentKind, ModelKind, MAX_LEMMA_SITES};
use super::csv::ExperimentRow;

/// Rows plus a human-readable summary.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<ExperimentRow>,
    pub summary: Vec<String>,
}

/// One per-sample measurement.
#[derive(Debug, Clone, Copy)]
struct Obs {
    name: &'static str,
    x: f64,
    value: f64,
}

fn obs(name: &'static str, x: f64, value: f64) -> Obs {
    Obs { name, x, value }
}

/// Runs every `(alpha, size)` point of the configuration.
///
/// Samples are evaluated in parallel but aggregated in sample order, so the
/// output does not depend on the worker count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    faer::set_global_parallelism(faer::Par::Seq);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))?;

    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &alpha in &config.alphas {
        for &extent in &config.sizes {
            let lattice = Lattice::new(config.dimension, extent)?.with_metric(config.metric);
            let start = Instant::now();
            let per_sample: Vec<Result<Vec<Obs>>> = pool.install(|| {
                (0..config.samples)
                    .into_par_iter()
                    .map(|k| sample(config, &lattice, alpha, k as u64))
                    .collect()
            });
            let per_sample = per_sample.into_iter().collect::<Result<Vec<_>>>()?;
            let mut point_rows = aggregate(config, alpha, extent, &per_sample)?;
            if config.kind == ExperimentKind::Bounds {
                point_rows.extend(deterministic_bounds(config, &lattice, alpha)?);
            }
            let seconds = start.elapsed().as_secs_f64();
            for r in &mut point_rows {
                r.seconds = seconds;
            }
            rows.extend(point_rows);
        }
    }
    rows.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.x.total_cmp(&b.x)));

    let mut names: Vec<&str> = rows.iter().map(|r| r.observable.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    for name in names {
        let worst = rows
            .iter()
            .filter(|r| r.observable == name)
            .map(|r| r.max_abs)
            .fold(0.0f64, f64::max);
        summary.push(format!("{}: {name} max |value| = {worst:.6e}", config.kind));
    }
    Ok(ExperimentOutput { rows, summary })
}

fn aggregate(config: &ExperimentConfig, alpha: f64, extent: usize, samples: &[Vec<Obs>]) -> Result<Vec<ExperimentRow>> {
    let first = samples.first().ok_or_else(|| Error::Validation("no samples".into()))?;
    let k = samples.len() as f64;
    let mut rows = Vec::with_capacity(first.len());
    for (slot, template) in first.iter().enumerate() {
        let mut sum = 0.0;
        let mut max_abs = 0.0f64;
        for s in samples {
            let o = s.get(slot).ok_or_else(|| Error::Numerical("ragged sample output".into()))?;
            sum += o.value;
            max_abs = max_abs.max(o.value.abs());
        }
        let mean = sum / k;
        let stderr = if samples.len() > 1 {
            let var = samples.iter().map(|s| (s[slot].value - mean).powi(2)).sum::<f64>() / (k - 1.0);
            (var / k).sqrt()
        } else {
            0.0
        };
        rows.push(ExperimentRow {
            experiment: config.kind.name().to_string(),
            alpha,
            n: extent,
            samples: samples.len(),
            observable: template.name.to_string(),
            x: template.x,
            mean,
            stderr,
            seconds: 0.0,
            max_abs,
        });
    }
    Ok(rows)
}

fn coupling_spec(config: &ExperimentConfig, alpha: f64, sample: u64) -> Result<CouplingSpec> {
    let amplitude = if config.amplitude_low == config.amplitude_high {
        AmplitudeLaw::Fixed(config.amplitude_low)
    } else {
        AmplitudeLaw::Uniform {
            low: config.amplitude_low,
            high: config.amplitude_high,
        }
    };
    CouplingSpec::new(alpha, amplitude, sample_seed(config.seed, sample))
}

/// Displacements of a clustering sweep: along the chain in 1D, along the
/// diagonal in 2D.
pub fn sweep_offsets(config: &ExperimentConfig, lattice: &Lattice) -> (usize, Vec<Offset>) {
    let extent = lattice.extent();
    let o = config.origin.unwrap_or(extent / 4);
    let room = extent - 1 - o;
    let rmax = config.max_offset.map_or(room, |m| m.min(room));
    let origin = if lattice.dimension() == 1 { o } else { o * extent + o };
    let offsets = (1..=rmax as isize)
        .map(|r| if lattice.dimension() == 1 { [r, 0] } else { [r, r] })
        .collect();
    (origin, offsets)
}

fn sample(config: &ExperimentConfig, lattice: &Lattice, alpha: f64, k: u64) -> Result<Vec<Obs>> {
    let spec = coupling_spec(config, alpha, k)?;
    let extent = lattice.extent() as f64;
    let beta = config.beta;
    match config.kind {
        ExperimentKind::Clustering => {
            let h = hopping_matrix(lattice, &spec)?;
            let c = thermal_correlation_matrix(&h, beta)?;
            let (origin, offsets) = sweep_offsets(config, lattice);
            let sweep = two_point_sweep(&c, lattice, origin, &offsets, alpha)?;
            let mut out = Vec::with_capacity(2 * sweep.len());
            for (off, p) in offsets.iter().zip(&sweep) {
                let r = off[0] as f64;
                out.push(obs("scaled_abs_correlation", r, p.scaled));
                out.push(obs("abs_correlation", r, p.magnitude));
            }
            Ok(out)
        }
        ExperimentKind::MutualInfo => {
            let partition = lattice.half_bipartition()?;
            let i = match config.model {
                ModelKind::Fermion => {
                    let h = hopping_matrix(lattice, &spec)?;
                    gaussian_mutual_information(&thermal_correlation_matrix(&h, beta)?, &partition)?
                }
                ModelKind::Heisenberg => {
                    let h = heisenberg_dense(&heisenberg_couplings(lattice, &spec)?)?;
                    mutual_information_ed(&gibbs_state(&h, beta)?, &partition)?
                }
            };
            let mut out = vec![obs("mutual_information", extent, i)];
            if lattice.dimension() == 2 {
                out.push(obs("mutual_information_per_side", extent, i / extent));
            }
            Ok(out)
        }
        ExperimentKind::Negativity => {
            let partition = lattice.half_bipartition()?;
            let h = hopping_matrix(lattice, &spec)?;
            let e = ssr_negativity(&thermal_correlation_matrix(&h, beta)?, &partition)?;
            let mut out = vec![obs("ssr_negativity", extent, e)];
            if lattice.dimension() == 2 {
                out.push(obs("ssr_negativity_per_side", extent, e / extent));
            }
            Ok(out)
        }
        ExperimentKind::Tfd => {
            let partition = lattice.half_bipartition()?;
            let h = heisenberg_dense(&heisenberg_couplings(lattice, &spec)?)?;
            let e = tfd_state(&h, beta)?.entanglement_entropy(&partition)?;
            let i = mutual_information_ed(&gibbs_state(&h, beta)?, &partition)?;
            Ok(vec![
                obs("tfd_entropy", extent, e),
                obs("mutual_information", extent, i),
                obs("tfd_slack", extent, 2.0 * e - i),
            ])
        }
        ExperimentKind::Bounds => {
            let partition = lattice.half_bipartition()?;
            let h = hopping_matrix(lattice, &spec)?;
            let i = gaussian_mutual_information(&thermal_correlation_matrix(&h, beta)?, &partition)?;
            let w = wolf_rhs(WolfModel::Fermion(&h), &partition, beta)?;
            Ok(vec![
                obs("mutual_information", extent, i),
                obs("wolf_rhs", extent, w.best()),
                obs("wolf_rhs_triangle", extent, w.triangle),
            ])
        }
        ExperimentKind::OracleCheck => {
            let partition = lattice.half_bipartition()?;
            let h = hopping_matrix(lattice, &spec)?;
            let c = thermal_correlation_matrix(&h, beta)?;
            let oracle = fermion_fock_oracle(&h, beta)?;
            let di = gaussian_mutual_information(&c, &partition)? - oracle.mutual_information(&partition)?;
            let de = ssr_negativity(&c, &partition)? - dense_ssr_negativity(oracle.rho(), partition.a())?;
            Ok(vec![
                obs("abs_diff_mutual_information", extent, di.abs()),
                obs("abs_diff_ssr_negativity", extent, de.abs()),
            ])
        }
    }
}

/// Ensemble-independent bound values for one `(alpha, size)` point. The
/// coupling scale is the envelope constant `g = 2^alpha max|t|`, which
/// dominates `|t| / d^alpha` at every distance `d >= 1`.
fn deterministic_bounds(config: &ExperimentConfig, lattice: &Lattice, alpha: f64) -> Result<Vec<ExperimentRow>> {
    let extent = lattice.extent();
    let t_max = config.amplitude_low.abs().max(config.amplitude_high.abs());
    let g = (2f64.powf(alpha) * t_max).max(f64::MIN_POSITIVE);
    let params = BoundParams {
        g,
        ..BoundParams::two_local(alpha, config.beta)?
    }
    .validated()?;
    let u = max_u_factor(lattice, alpha, config.u_variant)?;
    let u_plain = max_u_factor(lattice, alpha, UVariant::Plain)?;
    let bc = beta_c(&params, u)?;
    let t1 = theorem1_rhs(lattice, &lattice.half_bipartition()?, &params)?;
    let mut values = vec![
        ("u", u),
        ("u_plain", u_plain),
        ("beta_c_simple", bc.simple),
        ("beta_c_lambert", bc.lambert),
        ("theorem1_rhs", t1),
    ];
    if lattice.num_sites() <= MAX_LEMMA_SITES {
        values.push(("product_lemma_ratio", product_lemma_check(lattice, alpha, g)?.max_ratio));
    }
    Ok(values
        .into_iter()
        .map(|(name, v)| ExperimentRow {
            experiment: config.kind.name().to_string(),
            alpha,
            n: extent,
            samples: 1,
            observable: name.to_string(),
            x: extent as f64,
            mean: v,
            stderr: 0.0,
            seconds: 0.0,
            max_abs: v.abs(),
        })
        .collect())
}
