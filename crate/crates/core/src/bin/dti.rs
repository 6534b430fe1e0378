use clap::Parser;
use dti_core::cli::{exit_code, run, RunConfig};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = RunConfig::parse();
    if let Err(e) = run(&config) {
        eprintln!("dti: {e}");
        std::process::exit(exit_code(&e));
    }
}
