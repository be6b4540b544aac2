fn main() {
    std::process::exit(fracdelta::cli::run(std::env::args_os()));
}
