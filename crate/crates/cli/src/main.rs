use clap::Parser;
use persuade::{main_with, Args};

fn main() {
    let args = Args::parse();
    let stdout = std::io::stdout();
    if let Err(e) = main_with(&args, &mut stdout.lock()) {
        eprintln!("persuade: {e}");
        std::process::exit(e.exit_code());
    }
}
