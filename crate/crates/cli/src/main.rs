use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use modsuper_cli::output::error_exit_code;
use modsuper_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = cli.opts.resolve().and_then(|cfg| run(cli.command, &cfg).map(|r| (r, cfg.format)));
    match outcome {
        Ok((report, format)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(format).as_bytes());
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("modsuper: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
