fn main() {
    std::process::exit(quiverit::cli::main_with_args(std::env::args_os()));
}
