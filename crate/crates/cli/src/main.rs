fn main() {
    std::process::exit(shockfront_cli::run(std::env::args_os()));
}
