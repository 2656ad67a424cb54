use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    ExitCode::from(planestat_cli::app::run(std::env::args_os(), &mut stdout))
}
