use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = antipode::cli::run(std::env::args_os());
    print!("{}", output);
    ExitCode::from(code.clamp(0, 255) as u8)
}
