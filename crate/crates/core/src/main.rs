fn main() {
    std::process::exit(aptl::cli::run(std::env::args_os()));
}
