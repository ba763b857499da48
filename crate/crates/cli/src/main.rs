fn main() {
    std::process::exit(pdsqueeze_cli::run(std::env::args_os()));
}
