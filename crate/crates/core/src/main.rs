fn main() {
    std::process::exit(creal::cli::run_from_args());
}
