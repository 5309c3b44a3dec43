fn main() {
    std::process::exit(toric::cli::run(std::env::args_os()));
}
