fn main() {
    std::process::exit(walgebra::cli::run(std::env::args_os()));
}
