fn main() {
    std::process::exit(cherednik::cli::main_with_args(std::env::args_os()));
}
