fn main() {
    let code = finsler_lie_cli::run(std::env::args_os());
    std::process::exit(code);
}
