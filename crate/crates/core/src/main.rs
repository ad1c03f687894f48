use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = tmv_core::cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.status as u8)
}
