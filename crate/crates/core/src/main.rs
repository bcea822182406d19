use std::io;

fn main() {
    let code = lambda_gen::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
