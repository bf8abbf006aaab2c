fn main() {
    std::process::exit(taniguchi::cli::main_with_args());
}
