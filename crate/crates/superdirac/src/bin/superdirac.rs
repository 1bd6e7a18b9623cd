fn main() {
    std::process::exit(superdirac::cli::run(std::env::args_os()));
}
