use std::io;

fn main() {
    let code = outersplit::cli_io::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
