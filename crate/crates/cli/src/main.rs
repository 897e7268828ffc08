mod args;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;
use isoparam_core::elimination::{run_certification_with, CertifyOptions};
use isoparam_core::geometry::grid_verify;

use args::Cli;
use config::{ConfigError, RunConfig};
use report::{compare_golden, golden_entries, read_golden, Golden, SymbolicOutcome, TopReport};

fn run(cfg: &RunConfig) -> Result<bool, ConfigError> {
    let mut symbolic = Vec::new();
    if let Some(sc) = &cfg.symbolic {
        let golden = sc.golden.as_deref().map(read_golden).transpose()?;
        let mut written = Golden::new();
        for &eps in &sc.epsilons {
            let opts = CertifyOptions {
                random_points: sc.points,
                seed: cfg.seed,
                mutation: None,
            };
            let trace = run_certification_with(eps, &opts);
            let golden_mismatches = golden.as_ref().map(|g| compare_golden(&trace, g)).unwrap_or_default();
            written.insert(eps.value().to_string(), golden_entries(&trace));
            symbolic.push(SymbolicOutcome { trace, golden_mismatches });
        }
        if let Some(path) = &sc.write_golden {
            let text = serde_json::to_string_pretty(&written).expect("golden serializes") + "\n";
            std::fs::write(path, text).map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let geometry = cfg.geometry.iter().map(|job| grid_verify(&job.immersion, &job.options)).collect();
    let report = TopReport {
        config: cfg,
        symbolic,
        geometry,
    };
    std::fs::write(&cfg.out, report.canonical())
        .map_err(|e| ConfigError(format!("cannot write {}: {e}", cfg.out.display())))?;
    print!("{}", report.summary());
    Ok(report.certified())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::from_cli(&cli).and_then(|cfg| run(&cfg));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
