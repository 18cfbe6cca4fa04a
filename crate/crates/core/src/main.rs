use std::io::{Read, Write};

fn main() {
    let mut stdin = || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    };
    let out = delta_kernel::cli::run_cli(std::env::args_os().skip(1), &mut stdin);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
