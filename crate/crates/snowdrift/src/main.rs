use std::process::ExitCode;

fn main() -> ExitCode {
    match snowdrift::cli::parse() {
        Ok(cli) => ExitCode::from(snowdrift::cli::main_with(cli)),
        Err(code) => ExitCode::from(code),
    }
}
