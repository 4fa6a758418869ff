fn main() {
    std::process::exit(invsphere_cli::run_from_args(std::env::args_os()));
}
