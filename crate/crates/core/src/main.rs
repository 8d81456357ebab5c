fn main() {
    std::process::exit(supou::cli::run(std::env::args_os()));
}
