use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let exec = match symdisc::limits_from_env() {
        Ok(limits) => symdisc::run(std::env::args_os(), &limits),
        Err(e) => symdisc::Execution { stdout: String::new(), stderr: e.to_json() + "\n", code: 2 },
    };
    // Ignore broken pipes on output; the exit code still reports the verdict.
    let _ = std::io::stdout().write_all(exec.stdout.as_bytes());
    let _ = std::io::stderr().write_all(exec.stderr.as_bytes());
    ExitCode::from(exec.code as u8)
}
