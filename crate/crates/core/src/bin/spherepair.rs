fn main() {
    std::process::exit(spherepair::cli::main_with_args(std::env::args_os()));
}
