//! Runs a shrunken paper preset through the harness and writes its CSV.

use thermal_arealaw::harness::{run_and_write, ExperimentConfig};

fn main() -> thermal_arealaw::Result<()> {
    let mut config = ExperimentConfig::preset("fig2c", 0.1)?;
    config.samples = 8;
    config.alphas = vec![0.6, 1.5];
    let out = std::env::temp_dir().join("fig2c_small.csv");
    config.out = Some(out.clone());
    let output = run_and_write(&config)?;
    for row in &output.rows {
        println!("alpha {:<4} N {:<4} {} = {:.5} +- {:.5}", row.alpha, row.n, row.observable, row.mean, row.stderr);
    }
    println!("wrote {}", out.display());
    Ok(())
}
