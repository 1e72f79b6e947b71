//! Runs a named experiment with a tolerance override and writes its JSON
//! and CSV reports to a temporary directory.

use catfpi::harness::{emit, run, ExperimentConfig, Format, KeyValueConfig};

fn main() -> catfpi::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "saddle-q".into());
    let params = KeyValueConfig::parse("timings = true\n[tolerances]\nsaddle.momentum = 1e-7\n")?;
    let report = run(&ExperimentConfig::from_params(&name, params)?)?;
    for v in &report.verdicts {
        println!("{:<32} {}", v.name, if v.passed { "pass" } else { "FAIL" });
    }
    let dir = std::env::temp_dir().join("catfpi-example");
    std::fs::create_dir_all(&dir)?;
    for fmt in [Format::Json, Format::Csv] {
        for path in emit(&report, fmt, &dir)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
