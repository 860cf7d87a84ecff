mod args;
mod commands;
mod output;
mod verify;

use args::{Cli, Command};
use clap::Parser;

fn main() {
    if let Err(failure) = run() {
        eprintln!("mahler: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn run() -> Result<(), commands::Failure> {
    configure_threads()?;
    let argv = merge_config_file()?;
    let cli = Cli::parse_from(argv);
    match &cli.command {
        Command::Measure(args) => commands::cmd_measure(args),
        Command::Height(args) => commands::cmd_height(args),
        Command::Substitute(args) => commands::cmd_substitute(args),
        Command::Converge(args) => commands::cmd_converge(args),
        Command::Verify(args) => commands::cmd_verify(args),
    }
}

/// MAHLER_THREADS caps internal parallelism; absence means automatic.
fn configure_threads() -> Result<(), commands::Failure> {
    let Ok(raw) = std::env::var("MAHLER_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().ok().filter(|t| *t >= 1).ok_or_else(|| {
        commands::Failure {
            code: 2,
            message: format!("MAHLER_THREADS must be a positive integer, got {raw:?}"),
        }
    })?;
    // A pre-existing global pool only happens in tests; keep its setting.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// Splices `--config` key=value entries into the argument list right after
/// the subcommand so explicit flags keep priority (duplicated keys from the
/// file are dropped entirely).
fn merge_config_file() -> Result<Vec<String>, commands::Failure> {
    let argv: Vec<String> = std::env::args().collect();
    let mut config_path: Option<std::path::PathBuf> = None;
    for (i, arg) in argv.iter().enumerate() {
        if arg == "--config" {
            config_path = argv.get(i + 1).map(Into::into);
        } else if let Some(path) = arg.strip_prefix("--config=") {
            config_path = Some(path.into());
        }
    }
    let Some(path) = config_path else {
        return Ok(argv);
    };
    if argv.len() < 2 {
        return Ok(argv);
    }
    let extra = commands::config_flags(&path, &argv[2..])?;
    let mut merged = argv[..2].to_vec();
    merged.extend(extra);
    merged.extend(argv[2..].iter().cloned());
    Ok(merged)
}
