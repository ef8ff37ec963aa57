fn main() {
    std::process::exit(iabsim::harness::cli::run(std::env::args_os()));
}
