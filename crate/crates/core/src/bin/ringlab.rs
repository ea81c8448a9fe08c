use std::process::ExitCode;

fn main() -> ExitCode {
    ringlab::cli::main_with_args(std::env::args_os())
}
