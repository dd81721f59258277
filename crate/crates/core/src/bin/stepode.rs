fn main() {
    std::process::exit(stepode::cli::main_with_args(std::env::args_os()));
}
