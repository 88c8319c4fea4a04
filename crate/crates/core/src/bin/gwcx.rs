fn main() {
    let outcome = gwcx::cli::run(std::env::args_os());
    print!("{}", outcome.report);
    std::process::exit(outcome.code);
}
