fn main() {
    std::process::exit(attractor_queries::cli::run(std::env::args_os()));
}
