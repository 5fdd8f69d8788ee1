//! Classifies the extension clauses of a `.loc` file after preprocessing.
//!
//! `cargo run --example fragments -- corpus/pointers.loc`

use std::{env, fs};

use hpilot::pipeline::{parse, prepare, Options};

fn main() {
    let path = env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/pointers.loc").into());
    let opts = Options { preprocess: env::args().any(|a| a == "-preprocess"), ..Options::default() };
    let task = parse(&fs::read_to_string(&path).expect("readable input"), &opts).expect("well-formed input");
    let p = prepare(task, &opts).expect("preprocessing");
    for (c, r) in p.task.extension_axioms.iter().zip(&p.report.per_clause) {
        println!("{:<24} {c}", r.fragment.to_string());
        if !r.reason.is_empty() {
            println!("{:<24} {}", "", r.reason);
        }
    }
    println!("all local: {}", p.report.all_local);
    for w in &p.warnings {
        println!("warning: {w}");
    }
}
