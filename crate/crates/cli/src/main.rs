use std::io::Write;
use std::process;

use bosonorder_cli::{run, WORD_CAP_ENV};

fn main() {
    let cap = std::env::var(WORD_CAP_ENV).ok();
    let out = run(std::env::args_os(), cap.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    process::exit(out.code);
}
