fn main() {
    std::process::exit(qevap::io::cli::main_with_args(std::env::args_os()));
}
