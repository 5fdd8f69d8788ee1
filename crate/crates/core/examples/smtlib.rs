//! Prints the SMT-LIB script for the reduced form of a `.loc` file.
//!
//! `cargo run --example smtlib -- corpus/mv1.loc -real`

use std::{env, fs};

use hpilot::backend::{emit, EmitOptions};
use hpilot::pipeline::{parse, prepare, reduce, Options};

fn main() {
    let args: Vec<String> = env::args().skip(1).collect();
    let path = args
        .iter()
        .find(|a| a.ends_with(".loc"))
        .cloned()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/mv1.loc").into());
    let opts = Options { real: args.iter().any(|a| a == "-real"), ..Options::default() };
    let task = parse(&fs::read_to_string(&path).expect("readable input"), &opts).expect("well-formed input");
    let r = reduce(&prepare(task, &opts).expect("preprocessing"), &opts);
    print!("{}", emit(&r.level0(), &r.signature, &EmitOptions { model: args.iter().any(|a| a == "-model") }));
}
