fn main() {
    std::process::exit(trunca::cli::run_from_args(std::env::args_os()));
}
