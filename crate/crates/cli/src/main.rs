use std::io;
use std::process::ExitCode;

use clap::Parser;
use congrlat_cli::{run, Cli, Io};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stdin, stdout, stderr) = (io::stdin(), io::stdout(), io::stderr());
    let code = run(
        &cli,
        &mut Io {
            stdin: &mut stdin.lock(),
            stdout: &mut stdout.lock(),
            stderr: &mut stderr.lock(),
        },
    );
    ExitCode::from(code as u8)
}
