use std::process::ExitCode;

fn main() -> ExitCode {
    orderly_algebra::cli::run()
}
