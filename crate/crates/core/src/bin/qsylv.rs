fn main() {
    std::process::exit(qsylv::cli::run(std::env::args_os()));
}
