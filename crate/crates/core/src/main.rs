fn main() {
    std::process::exit(netoa::cli::run(std::env::args_os()));
}
