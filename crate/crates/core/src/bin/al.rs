fn main() {
    let (code, out) = abslogic::cli::execute_command(std::env::args_os());
    if code == abslogic::cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
