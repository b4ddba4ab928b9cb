fn main() {
    std::process::exit(bredon::cli::run(std::env::args_os()));
}
