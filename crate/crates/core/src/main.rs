fn main() {
    std::process::exit(relaxrep::cli::run(std::env::args_os()));
}
