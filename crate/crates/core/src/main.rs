fn main() {
    std::process::exit(strength::cli::run(std::env::args_os()));
}
