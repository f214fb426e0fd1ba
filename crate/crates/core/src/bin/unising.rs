fn main() {
    std::process::exit(unising::cli::run(std::env::args_os()));
}
