use std::io::Write;

fn main() {
    let (code, out) = gcv::cli::run(std::env::args_os());
    if code == 0 {
        print!("{}", out);
    } else {
        eprint!("{}", out);
    }
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
