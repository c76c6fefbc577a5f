fn main() {
    std::process::exit(hkr_algebra::cli::main_with_args(std::env::args_os()));
}
