//! Experiment configuration, presets and the flat `key = value` format.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bounds::UVariant;
use crate::ed::{MAX_SPIN_SITES, MAX_TFD_SITES, MAX_TIME_REVERSAL_MODES};
use crate::error::{Error, Result};
use crate::lattice::Metric;

/// Largest lattice (in sites) for the Gaussian experiments.
pub const MAX_GAUSSIAN_SITES: usize = 4096;
/// Largest lattice (in sites) for the negativity pipeline (`2N x 2N` complex).
pub const MAX_NEGATIVITY_SITES: usize = 2048;
/// Product-lemma brute force is cubic; skipped above this many sites.
pub const MAX_LEMMA_SITES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Clustering,
    MutualInfo,
    Negativity,
    Tfd,
    Bounds,
    OracleCheck,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Clustering,
        ExperimentKind::MutualInfo,
        ExperimentKind::Negativity,
        ExperimentKind::Tfd,
        ExperimentKind::Bounds,
        ExperimentKind::OracleCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Clustering => "clustering",
            ExperimentKind::MutualInfo => "mutual-info",
            ExperimentKind::Negativity => "negativity",
            ExperimentKind::Tfd => "tfd",
            ExperimentKind::Bounds => "bounds",
            ExperimentKind::OracleCheck => "oracle-check",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown experiment '{s}'")))
    }
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Fermion,
    Heisenberg,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fermion" => Ok(ModelKind::Fermion),
            "heisenberg" => Ok(ModelKind::Heisenberg),
            _ => Err(Error::Validation(format!("unknown model '{s}' (fermion|heisenberg)"))),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModelKind::Fermion => "fermion",
            ModelKind::Heisenberg => "heisenberg",
        })
    }
}

/// Fully resolved experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub model: ModelKind,
    pub dimension: usize,
    /// Chain lengths (1D) or side lengths (2D).
    pub sizes: Vec<usize>,
    pub alphas: Vec<f64>,
    pub beta: f64,
    pub samples: usize,
    pub seed: u64,
    pub amplitude_low: f64,
    pub amplitude_high: f64,
    pub metric: Metric,
    pub u_variant: UVariant,
    /// Clustering origin coordinate; defaults to `extent / 4` along each axis.
    pub origin: Option<usize>,
    /// Largest displacement in a clustering sweep; defaults to the lattice edge.
    pub max_offset: Option<usize>,
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
    pub preset: Option<String>,
    pub scale: f64,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        let (model, sizes) = match kind {
            ExperimentKind::Clustering => (ModelKind::Fermion, vec![256]),
            ExperimentKind::MutualInfo | ExperimentKind::Negativity => (ModelKind::Fermion, vec![64, 128, 256]),
            ExperimentKind::Tfd => (ModelKind::Heisenberg, vec![4, 6, 8]),
            ExperimentKind::Bounds => (ModelKind::Fermion, vec![64]),
            ExperimentKind::OracleCheck => (ModelKind::Fermion, vec![6]),
        };
        ExperimentConfig {
            kind,
            model,
            dimension: 1,
            sizes,
            alphas: vec![0.6, 1.5],
            beta: 2.0,
            samples: 20,
            seed: 1,
            amplitude_low: 0.0,
            amplitude_high: 1.0,
            metric: Metric::Manhattan,
            u_variant: UVariant::Lemma,
            origin: None,
            max_offset: None,
            out: None,
            workers: 0,
            preset: None,
            scale: 1.0,
        }
    }

    /// Full-size presets, shrunk by `scale` in `(0, 1]`.
    pub fn preset(name: &str, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale <= 1.0) {
            return Err(Error::Validation(format!("scale must lie in (0, 1], got {scale}")));
        }
        let shrink = |n: usize, floor: usize| -> usize {
            let v = ((n as f64) * scale).round() as usize;
            let v = v.max(floor);
            v + v % 2
        };
        let shrink_all = |ns: &[usize], floor: usize| -> Vec<usize> {
            let mut v: Vec<usize> = ns.iter().map(|&n| shrink(n, floor)).collect();
            v.dedup();
            v
        };
        let samples = |n: usize| ((n as f64) * scale).round().max(1.0) as usize;
        let fermion_alphas = vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
        let mut c = match name {
            "fig2a" => {
                let mut c = Self::new(ExperimentKind::Clustering);
                c.sizes = vec![shrink(1000, 8)];
                c.alphas = fermion_alphas;
                c.samples = samples(1000);
                c
            }
            "fig2b" => {
                let mut c = Self::new(ExperimentKind::Clustering);
                c.dimension = 2;
                c.sizes = vec![shrink(40, 8)];
                c.alphas = fermion_alphas;
                c.samples = samples(1000);
                c
            }
            "fig2c" | "fig4a" => {
                let kind = if name == "fig2c" { ExperimentKind::MutualInfo } else { ExperimentKind::Negativity };
                let mut c = Self::new(kind);
                c.sizes = shrink_all(&[100, 200, 400, 600, 800, 1000], 8);
                c.alphas = fermion_alphas;
                c.samples = samples(1000);
                c
            }
            "fig2d" | "fig4b" => {
                let kind = if name == "fig2d" { ExperimentKind::MutualInfo } else { ExperimentKind::Negativity };
                let mut c = Self::new(kind);
                c.dimension = 2;
                c.sizes = shrink_all(&[10, 20, 30, 40], 4);
                c.alphas = fermion_alphas;
                c.samples = samples(1000);
                c
            }
            "figS5" => {
                let mut c = Self::new(ExperimentKind::MutualInfo);
                c.model = ModelKind::Heisenberg;
                c.sizes = vec![4, 6, 8, 10];
                c.alphas = vec![0.5, 1.0, 1.5, 2.0];
                c.samples = samples(2000);
                c
            }
            other => {
                return Err(Error::Validation(format!(
                    "unknown preset '{other}' (fig2a, fig2b, fig2c, fig2d, fig4a, fig4b, figS5)"
                )))
            }
        };
        c.preset = Some(name.to_string());
        c.scale = scale;
        Ok(c)
    }

    /// Number of lattice sites for a given extent.
    pub fn num_sites(&self, extent: usize) -> usize {
        extent.pow(self.dimension as u32)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::Validation(m));
        if !matches!(self.dimension, 1 | 2) {
            return Err(Error::InvalidGeometry(format!(
                "dimension must be 1 or 2, got {}",
                self.dimension
            )));
        }
        if self.sizes.is_empty() {
            return invalid("at least one size is required".into());
        }
        if self.alphas.is_empty() {
            return invalid("at least one alpha is required".into());
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return invalid(format!("alpha must be positive and finite, got {a}"));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return invalid(format!("beta must be positive and finite, got {}", self.beta));
        }
        if self.samples == 0 {
            return invalid("samples must be positive".into());
        }
        if !(self.amplitude_low.is_finite() && self.amplitude_high.is_finite())
            || self.amplitude_low > self.amplitude_high
        {
            return invalid(format!(
                "amplitude interval [{}, {}] is invalid",
                self.amplitude_low, self.amplitude_high
            ));
        }
        if !(self.scale > 0.0 && self.scale <= 1.0) {
            return invalid(format!("scale must lie in (0, 1], got {}", self.scale));
        }
        let needs_half = !matches!(self.kind, ExperimentKind::Clustering);
        for &s in &self.sizes {
            if s < 2 {
                return Err(Error::InvalidGeometry(format!("extent must be at least 2, got {s}")));
            }
            if needs_half && s % 2 != 0 {
                return Err(Error::InvalidGeometry(format!(
                    "half bipartitions need an even extent, got {s}"
                )));
            }
        }
        let heisenberg = matches!(self.kind, ExperimentKind::Tfd)
            || (matches!(self.kind, ExperimentKind::MutualInfo) && self.model == ModelKind::Heisenberg);
        if (heisenberg || self.kind == ExperimentKind::OracleCheck) && self.dimension != 1 {
            return Err(Error::UnsupportedGeometry(format!(
                "{} experiments run on 1D chains only",
                self.kind
            )));
        }
        if matches!(self.kind, ExperimentKind::Clustering | ExperimentKind::Negativity | ExperimentKind::Bounds | ExperimentKind::OracleCheck)
            && self.model != ModelKind::Fermion
        {
            return invalid(format!("{} experiments use the fermion model", self.kind));
        }
        if self.kind == ExperimentKind::Tfd && self.model != ModelKind::Heisenberg {
            return invalid("tfd experiments use the Heisenberg model".into());
        }
        let largest = *self.sizes.iter().max().expect("nonempty");
        let sites = self.num_sites(largest);
        let (limit, what) = match self.kind {
            ExperimentKind::Tfd => (MAX_TFD_SITES, "thermofield double"),
            ExperimentKind::OracleCheck => (MAX_TIME_REVERSAL_MODES, "oracle check"),
            ExperimentKind::MutualInfo if heisenberg => (MAX_SPIN_SITES, "Heisenberg exact diagonalization"),
            ExperimentKind::Negativity => (MAX_NEGATIVITY_SITES, "SSR negativity pipeline"),
            _ => (MAX_GAUSSIAN_SITES, "Gaussian correlation matrix"),
        };
        if sites > limit {
            return Err(Error::Capacity {
                what,
                requested: sites,
                limit,
                estimate: resource_estimate(self.kind, heisenberg, sites),
            });
        }
        if self.kind == ExperimentKind::Clustering {
            for &s in &self.sizes {
                let origin = self.origin.unwrap_or(s / 4);
                if origin + 1 >= s {
                    return invalid(format!("origin {origin} leaves no room on extent {s}"));
                }
            }
            if self.max_offset == Some(0) {
                return invalid("max_offset must be positive".into());
            }
        }
        Ok(())
    }

    /// Canonical `key = value` rendering; parsing it reproduces `self`.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let list_f = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",");
        let list_u = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "experiment = {}", self.kind);
        let _ = writeln!(s, "model = {}", self.model);
        let _ = writeln!(s, "dimension = {}", self.dimension);
        let _ = writeln!(s, "sizes = {}", list_u(&self.sizes));
        let _ = writeln!(s, "alpha = {}", list_f(&self.alphas));
        let _ = writeln!(s, "beta = {:?}", self.beta);
        let _ = writeln!(s, "samples = {}", self.samples);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "amplitude_low = {:?}", self.amplitude_low);
        let _ = writeln!(s, "amplitude_high = {:?}", self.amplitude_high);
        let _ = writeln!(s, "metric = {}", self.metric);
        let _ = writeln!(s, "u_variant = {}", self.u_variant);
        if let Some(o) = self.origin {
            let _ = writeln!(s, "origin = {o}");
        }
        if let Some(r) = self.max_offset {
            let _ = writeln!(s, "max_offset = {r}");
        }
        if let Some(p) = &self.out {
            let _ = writeln!(s, "out = {}", p.display());
        }
        let _ = writeln!(s, "workers = {}", self.workers);
        if let Some(p) = &self.preset {
            let _ = writeln!(s, "preset = {p}");
        }
        let _ = writeln!(s, "scale = {:?}", self.scale);
        s
    }

    /// Parses the flat format. A `preset` key (or the `experiment` key)
    /// seeds the defaults; every other key then overrides them.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Validation(format!("config line {}: expected 'key = value'", lineno + 1))
            })?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let get = |key: &str| pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let scale = get("scale").map(parse_f64).transpose()?.unwrap_or(1.0);
        let mut c = match (get("preset"), get("experiment")) {
            (Some(p), _) => Self::preset(p, scale)?,
            (None, Some(e)) => Self::new(e.parse()?),
            (None, None) => {
                return Err(Error::Validation("config needs an 'experiment' or 'preset' key".into()))
            }
        };
        for (k, v) in &pairs {
            c.set(k, v)?;
        }
        Ok(c)
    }

    /// Applies one `key = value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "experiment" => {
                let kind: ExperimentKind = value.parse()?;
                if kind != self.kind {
                    return Err(Error::Validation(format!(
                        "experiment '{kind}' conflicts with preset experiment '{}'",
                        self.kind
                    )));
                }
            }
            "preset" => self.preset = Some(value.to_string()),
            "model" => self.model = value.parse()?,
            "dimension" | "dim" => self.dimension = parse_usize(value)?,
            "sizes" | "n" => self.sizes = parse_list(value, parse_usize)?,
            "alpha" => self.alphas = parse_list(value, parse_f64)?,
            "beta" => self.beta = parse_f64(value)?,
            "samples" => self.samples = parse_usize(value)?,
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| Error::Validation(format!("invalid seed '{value}'")))?
            }
            "amplitude_low" => self.amplitude_low = parse_f64(value)?,
            "amplitude_high" => self.amplitude_high = parse_f64(value)?,
            "metric" => self.metric = value.parse()?,
            "u_variant" => self.u_variant = value.parse()?,
            "origin" => self.origin = Some(parse_usize(value)?),
            "max_offset" => self.max_offset = Some(parse_usize(value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "workers" => self.workers = parse_usize(value)?,
            "scale" => self.scale = parse_f64(value)?,
            other => return Err(Error::Validation(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }
}

fn resource_estimate(kind: ExperimentKind, heisenberg: bool, sites: usize) -> String {
    match kind {
        ExperimentKind::Tfd | ExperimentKind::OracleCheck => format!("2^{} amplitudes", 2 * sites),
        ExperimentKind::MutualInfo if heisenberg => format!("dense blocks of a 2^{sites} state space"),
        ExperimentKind::Negativity => {
            let n = 2 * sites;
            format!("{n}x{n} complex matrices, about {:.1} GB each", (n * n * 16) as f64 / 1e9)
        }
        _ => format!("{sites}x{sites} eigensolves, about {:.1} GB per matrix", (sites * sites * 8) as f64 / 1e9),
    }
}

fn parse_f64(v: &str) -> Result<f64> {
    v.parse().map_err(|_| Error::Validation(format!("invalid number '{v}'")))
}

fn parse_usize(v: &str) -> Result<usize> {
    v.parse().map_err(|_| Error::Validation(format!("invalid integer '{v}'")))
}

pub(crate) fn parse_list<T>(v: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(f).collect()
}
