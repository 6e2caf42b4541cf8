fn main() {
    std::process::exit(paradoxlab::cli::main_with(std::env::args_os()));
}
