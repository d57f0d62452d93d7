use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = decat::run(std::env::args_os());
    if result.exit_code == 0 {
        print!("{}", result.report);
    } else {
        let _ = write!(std::io::stderr(), "{}", result.report);
    }
    ExitCode::from(u8::try_from(result.exit_code).unwrap_or(1))
}
