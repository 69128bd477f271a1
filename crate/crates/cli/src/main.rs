use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use blochkit_cli::{parse_config, run, workers_from_env, CliError, EXIT_DEFINITIVE, EXIT_ERROR};
use clap::error::ErrorKind;

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Clap(e)) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            ExitCode::from(EXIT_DEFINITIVE)
        }
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            ExitCode::from(EXIT_ERROR)
        }
        Err(e) => {
            eprintln!("blochkit: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn real_main() -> Result<u8, CliError> {
    let config = parse_config(std::env::args_os())?;
    if let Some(n) = workers_from_env()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let start = Instant::now();
    let outcome = run(&config)?;
    let elapsed = start.elapsed();

    if let Some(path) = &config.out {
        outcome.report.write_json(path)?;
    }
    if let Some(path) = &config.csv {
        outcome.report.write_csv(path)?;
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let body = outcome.text.clone().unwrap_or_else(|| outcome.report.to_json());
    lock.write_all(body.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    eprintln!("wall-clock {:.3} s", elapsed.as_secs_f64());
    Ok(outcome.exit_code())
}
