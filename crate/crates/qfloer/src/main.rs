fn main() {
    std::process::exit(qfloer::cli::run(std::env::args_os()));
}
