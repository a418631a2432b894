use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use thermal_arealaw::harness::{render_csv, run_and_write, ExperimentConfig, ExperimentKind};
use thermal_arealaw::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Clustering,
    MutualInfo,
    Negativity,
    Tfd,
    Bounds,
    OracleCheck,
}

impl From<Kind> for ExperimentKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Clustering => ExperimentKind::Clustering,
            Kind::MutualInfo => ExperimentKind::MutualInfo,
            Kind::Negativity => ExperimentKind::Negativity,
            Kind::Tfd => ExperimentKind::Tfd,
            Kind::Bounds => ExperimentKind::Bounds,
            Kind::OracleCheck => ExperimentKind::OracleCheck,
        }
    }
}

/// Seeded thermal area-law experiments. Writes CSV to --out (or stdout).
#[derive(Debug, Parser)]
#[command(name = "arealaw", version)]
struct Cli {
    #[arg(value_enum)]
    experiment: Kind,
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// fig2a, fig2b, fig2c, fig2d, fig4a, fig4b or figS5.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    scale: Option<f64>,
    /// Comma-separated exponents.
    #[arg(long)]
    alpha: Option<String>,
    /// Comma-separated chain lengths or side lengths.
    #[arg(long, alias = "n")]
    sizes: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    /// fermion or heisenberg.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// manhattan or euclidean.
    #[arg(long)]
    metric: Option<String>,
    /// plain or lemma.
    #[arg(long)]
    u_variant: Option<String>,
    #[arg(long)]
    origin: Option<usize>,
    #[arg(long)]
    max_offset: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    workers: Option<usize>,
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let kind = ExperimentKind::from(cli.experiment);
    let mut c = if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        ExperimentConfig::from_config_str(&text)?
    } else if let Some(p) = &cli.preset {
        ExperimentConfig::preset(p, cli.scale.unwrap_or(1.0))?
    } else {
        ExperimentConfig::new(kind)
    };
    if c.kind != kind {
        return Err(Error::Validation(format!(
            "'{}' was requested but the preset or config describes '{}'",
            kind, c.kind
        )));
    }
    let mut set = |key: &str, v: Option<String>| v.map_or(Ok(()), |v| c.set(key, &v));
    set("scale", cli.scale.map(|v| format!("{v:?}")))?;
    set("alpha", cli.alpha.clone())?;
    set("sizes", cli.sizes.clone())?;
    set("dimension", cli.dim.map(|v| v.to_string()))?;
    set("model", cli.model.clone())?;
    set("beta", cli.beta.map(|v| format!("{v:?}")))?;
    set("samples", cli.samples.map(|v| v.to_string()))?;
    set("seed", cli.seed.map(|v| v.to_string()))?;
    set("metric", cli.metric.clone())?;
    set("u_variant", cli.u_variant.clone())?;
    set("origin", cli.origin.map(|v| v.to_string()))?;
    set("max_offset", cli.max_offset.map(|v| v.to_string()))?;
    set("out", cli.out.as_ref().map(|p| p.display().to_string()))?;
    set("workers", cli.workers.map(|v| v.to_string()))?;
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve(&cli).and_then(|c| run_and_write(&c).map(|o| (c, o)));
    match result {
        Ok((config, output)) => {
            if config.out.is_none() {
                print!("{}", render_csv(&output.rows));
            }
            for line in &output.summary {
                eprintln!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
