use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (report, human, json) = orbitk::cli::dispatch(&args);
    let code = report.exit_status;
    let text = if json { report.to_json() + "\n" } else { human };
    if code == 0 || json {
        let _ = std::io::stdout().write_all(text.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(text.as_bytes());
    }
    ExitCode::from(code as u8)
}
