use clap::Parser;

use ribbon_cli::{run, Cli, Failure};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => print!("{text}"),
        Err(f) => {
            match &f {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Verification(text) => print!("{text}"),
                Failure::Refused { report, reason } => {
                    print!("{report}");
                    eprintln!("refused: {reason}");
                }
            }
            std::process::exit(f.code());
        }
    }
}
