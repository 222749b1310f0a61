use clap::Parser;

fn main() {
    let cli = logtc::cli::Cli::parse();
    let outcome = logtc::cli::run(cli);
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
