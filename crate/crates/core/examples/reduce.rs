//! Reduces a `.loc` file to the base theory and prints the clause counts.
//!
//! `cargo run --example reduce -- corpus/arrays_from_book.loc -preprocess`

use std::{env, fs};

use hpilot::pipeline::{parse, prepare, reduce, Options};

fn main() {
    let args: Vec<String> = env::args().skip(1).collect();
    let path = args.iter().find(|a| !a.starts_with('-') && *a != "true").cloned().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/arrays_from_book.loc").into());
    let has = |f: &str| args.iter().any(|a| a == f);
    let opts = Options { preprocess: has("-preprocess"), arrays: has("-arrays"), real: has("-real"), ..Options::default() };
    let task = parse(&fs::read_to_string(&path).expect("readable input"), &opts).expect("well-formed input");
    let prepared = prepare(task, &opts).expect("preprocessing");
    for c in &prepared.task.extension_axioms {
        println!("K  {c}    L: {}", c.level);
    }
    for c in &prepared.task.query {
        println!("G  {c}    L: {}", c.level);
    }
    let r = reduce(&prepared, &opts);
    for l in &r.levels {
        println!(
            "level {}: {} terms, {} instances, {} definitions, {} congruence clauses",
            l.level,
            l.terms.len(),
            l.instances.len(),
            l.definitions.len(),
            l.congruence.len()
        );
    }
    if let Some(reason) = &r.abort {
        println!("aborted: {reason}");
    }
    println!("Total number of clauses: {}.", r.total());
}
