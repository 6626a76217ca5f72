use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = pbw_cli::run_command(std::env::args_os());
    if let Some(usage) = &outcome.usage {
        if outcome.code == 0 {
            print!("{usage}");
        } else {
            eprint!("{usage}");
        }
    } else if outcome.code == 2 {
        eprint!("{}", outcome.report.to_text());
    } else if !outcome.quiet {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.report.to_text().as_bytes());
    }
    ExitCode::from(outcome.code as u8)
}
