use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (status, output) = lcc_core::cli::run(&args);
    print!("{output}");
    ExitCode::from(status as u8)
}
