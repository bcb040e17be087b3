fn main() {
    std::process::exit(qdcavity::cli::cli_main(std::env::args_os()));
}
