use clap::Parser;

fn main() {
    let cli = cychom::cli::Cli::parse();
    std::process::exit(cychom::cli::run(cli));
}
