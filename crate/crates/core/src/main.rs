fn main() {
    std::process::exit(zalcman::cli::run(std::env::args_os()));
}
