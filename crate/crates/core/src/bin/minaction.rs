fn main() {
    std::process::exit(minaction::cli::run_from(std::env::args_os()));
}
