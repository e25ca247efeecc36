use std::io;

fn main() {
    let code = wgs_ghz::harness::cli_entry(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
