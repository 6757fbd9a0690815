fn main() {
    std::process::exit(tanlab_cli::cli_main(std::env::args_os()));
}
