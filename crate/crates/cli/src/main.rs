mod args;
mod run;
mod table;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = e.exit_code();
            match format {
                Format::Json => eprintln!("{}", e.to_json(code)),
                Format::Table => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
