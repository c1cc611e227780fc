use std::io::{self, BufRead, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input: Box<dyn BufRead> = Box::new(stdin.lock());
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    let code = buster_fixer::cli_io::run(std::env::args_os(), &mut input, &mut stdout, &mut stderr);
    let _ = stdout.flush();
    ExitCode::from(code as u8)
}
