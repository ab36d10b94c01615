fn main() {
    std::process::exit(colored_overpartitions::cli::run(std::env::args_os()));
}
