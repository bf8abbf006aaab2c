//! Drives the command-line front end in-process, as the `taniguchi` binary
//! does, capturing its output.
//!
//!     cargo run --example command_line -- table --m 2..10

fn main() {
    let mut args: Vec<String> = std::env::args().collect();
    if args.len() == 1 {
        args.extend(["--format", "csv", "table", "--m", "2..8"].map(String::from));
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = taniguchi::cli::run(args, &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit code {code}");
}
