use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = arithpoints_cli::run(std::env::args_os());
    // Ignore broken pipes: the exit code still reports the outcome.
    let _ = std::io::stdout().write_all(r.stdout.as_bytes());
    let _ = std::io::stderr().write_all(r.stderr.as_bytes());
    ExitCode::from(r.exit_code as u8)
}
