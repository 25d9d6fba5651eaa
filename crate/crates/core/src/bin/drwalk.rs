fn main() {
    std::process::exit(drwalk::cli::run(std::env::args_os()));
}
