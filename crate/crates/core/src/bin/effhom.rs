fn main() {
    std::process::exit(effhom::cli::main_with_args(std::env::args_os()));
}
