fn main() {
    std::process::exit(wittkit::cli::run(std::env::args_os()));
}
