fn main() {
    std::process::exit(dkp_cli::main_with_args(std::env::args_os()));
}
