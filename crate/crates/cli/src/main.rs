fn main() {
    std::process::exit(tantheta_cli::dispatch(std::env::args_os()));
}
