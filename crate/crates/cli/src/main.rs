fn main() {
    std::process::exit(realh1_cli::run(std::env::args_os()));
}
