fn main() {
    std::process::exit(setvalued::cli::run(std::env::args_os()));
}
