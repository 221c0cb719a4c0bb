use clap::Parser;

fn main() {
    let cli = fifosim::cli::Cli::parse();
    std::process::exit(i32::from(fifosim::cli::execute(cli)));
}
