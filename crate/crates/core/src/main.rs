use clap::Parser;

fn main() {
    std::process::exit(scrollkit::cli::main_with(scrollkit::cli::Cli::parse()));
}
