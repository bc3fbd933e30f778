fn main() {
    std::process::exit(rotodo::cli::main_with_args(std::env::args_os()));
}
