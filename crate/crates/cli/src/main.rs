use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod config;
mod output;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(err) = config::init_threads() {
        eprintln!("error: {err:#}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Detect(a) => commands::detect(&a),
        Command::Attack(a) => commands::attack(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Betweenness(a) => commands::betweenness(&a),
        Command::Generate(a) => commands::generate(&a),
        Command::Dimension(a) => commands::dimension(&a),
        Command::Bench(a) => commands::bench(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
