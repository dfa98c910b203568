use clap::Parser;

fn main() {
    let cli = belief_cli::Cli::parse();
    if let Err(err) = belief_cli::run(cli) {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}
