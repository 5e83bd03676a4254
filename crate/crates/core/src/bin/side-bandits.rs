use std::process::ExitCode;

use side_bandits::harness::{format_csv, parse_config, run_experiment, write_csv};
use side_bandits::Error;

fn main() -> ExitCode {
    let config = match parse_config(std::env::args_os()) {
        Ok(c) => c,
        Err(Error::Help(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let result = match run_experiment(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };

    match &config.output_path {
        Some(path) => {
            if let Err(e) = write_csv(&result.curves, &result.cover_info, path) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
        None => print!("{}", format_csv(&result.curves, &result.cover_info)),
    }

    eprintln!(
        "cover: {} cliques over {} arms, {:.3} cliques per arm",
        result.cover_info.num_cliques,
        result.instance.num_arms(),
        result.cover_info.avg_cliques_per_arm
    );
    for curve in &result.curves {
        let speedup = result
            .speedups
            .as_ref()
            .and_then(|s| s.get(&curve.policy))
            .map(|k| format!("  speedup {k:.2}x"))
            .unwrap_or_default();
        eprintln!(
            "{:<16} r(T) = {:.6}{speedup}",
            curve.policy,
            curve.final_regret()
        );
    }
    ExitCode::SUCCESS
}
