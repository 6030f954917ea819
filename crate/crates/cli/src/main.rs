use clap::Parser;
use hurwitz_cli::{exit, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.output(cli.json));
            std::process::exit(if out.ok { exit::OK } else { exit::VERIFICATION });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
