fn main() {
    std::process::exit(eqfields::cli::run_cli(std::env::args_os()));
}
