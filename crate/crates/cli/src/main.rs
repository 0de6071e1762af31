use clap::Parser;
use tamearr::options::Cli;

fn main() {
    std::process::exit(tamearr::run(Cli::parse()));
}
