fn main() {
    std::process::exit(rankin_periods::cli::main());
}
