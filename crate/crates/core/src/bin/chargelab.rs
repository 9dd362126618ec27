fn main() {
    std::process::exit(chargelab::cli::main_with_args(std::env::args_os()));
}
