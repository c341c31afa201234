fn main() {
    std::process::exit(holocurve::cli::main_with_args(std::env::args_os()));
}
