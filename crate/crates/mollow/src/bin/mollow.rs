use clap::Parser;
use mollow::cli::{run, Cli, ErrorRecord};
use mollow::output::to_json_string;

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        let code = err.exit_code();
        let message = err.to_string();
        let record = ErrorRecord { error: &message, exit_code: code };
        match to_json_string(&record) {
            Ok(json) => eprint!("{json}"),
            Err(_) => eprintln!("{{\"error\":\"{message}\",\"exit_code\":{code}}}"),
        }
        std::process::exit(code);
    }
}
