fn main() {
    std::process::exit(synram::cli::run(std::env::args_os()));
}
