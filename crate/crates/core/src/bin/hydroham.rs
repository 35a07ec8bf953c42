fn main() {
    std::process::exit(hydroham::cli::run(std::env::args_os()));
}
