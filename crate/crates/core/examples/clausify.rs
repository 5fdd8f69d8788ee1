//! Clause normal form of the `Formulas` section of a `.loc` file.
//!
//! `cargo run --example clausify -- corpus/continuity.loc`

use std::{env, fs};

use hpilot::clausifier::{clausify, ClausifyOptions};
use hpilot::parser::parse_task;

fn main() {
    let path = env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/continuity.loc").into());
    let task = parse_task(&fs::read_to_string(&path).expect("readable input")).expect("well-formed input");
    for f in &task.formulas {
        println!("formula: {f}");
    }
    let rename = !env::args().any(|a| a == "--no-rename");
    let (clauses, _) = clausify(&task.formulas, &task.signature, &ClausifyOptions { rename });
    println!("{} clauses", clauses.len());
    for c in &clauses {
        println!("  {c}    L: {}", c.level);
    }
}
