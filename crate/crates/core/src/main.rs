fn main() {
    std::process::exit(hypertoric::cli::run(std::env::args_os()));
}
