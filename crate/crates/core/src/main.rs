fn main() {
    std::process::exit(erpolar::cli::run(std::env::args_os()));
}
