fn main() {
    std::process::exit(schubreg::cli::run(std::env::args_os()));
}
