//! Parses a `.loc` file and prints it back in normalized form.
//!
//! `cargo run --example print_task -- corpus/mono.loc`

use std::{env, fs, process};

use hpilot::parser::{parse_task, print_task};

fn main() {
    let path = env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/mono.loc").into());
    let text = fs::read_to_string(&path).unwrap_or_else(|e| {
        eprintln!("{path}: {e}");
        process::exit(3);
    });
    match parse_task(&text) {
        Ok(task) => print!("{}", print_task(&task)),
        Err(e) => {
            eprintln!("{path}: {e}");
            process::exit(3);
        }
    }
}
