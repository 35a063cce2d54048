fn main() {
    std::process::exit(hhs_cli::run(std::env::args_os()));
}
