fn main() {
    std::process::exit(remez_lab::cli::run(std::env::args_os()));
}
