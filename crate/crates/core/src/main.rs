fn main() {
    std::process::exit(betadec::cli::run(std::env::args_os()));
}
