fn main() {
    std::process::exit(hypergiant::cli::main_with_args(std::env::args_os()));
}
