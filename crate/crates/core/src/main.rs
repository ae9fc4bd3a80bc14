use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = hurwitz_hodge::cli::run(std::env::args().skip(1));
    if code == 0 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    ExitCode::from(code as u8)
}
