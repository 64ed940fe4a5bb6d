fn main() {
    std::process::exit(gks::cli::main_with(std::env::args_os()));
}
