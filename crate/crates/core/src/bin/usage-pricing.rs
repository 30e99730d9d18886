fn main() {
    std::process::exit(usage_pricing::harness::cli::main_with_args(std::env::args_os()));
}
