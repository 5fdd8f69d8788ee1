//! Shows write elimination, flattening and linearization on the array example.

use hpilot::parser::parse_task;
use hpilot::preprocess::{eliminate_writes, flatten, linearize, split_disequalities};

const INPUT: &str = "
Base_functions := {(+, 2), (-, 2)}
Extension_functions := {(a, 1), (b, 1)}
Relations := {(<=, 2)}
Clauses := (FORALL i). l <= i, i <= u --> a(i) = b(i + _0);
Query := NOT(write(a, u + _1, x)(u + _1) = x);
";

fn main() {
    let mut task = parse_task(INPUT).expect("well-formed input");
    eliminate_writes(&mut task).expect("ground write arguments");
    let sig = task.signature.clone();
    println!("after write elimination:");
    for c in task.extension_axioms.iter().chain(&task.query) {
        println!("  {c}");
    }
    let split = split_disequalities(&task.extension_axioms, &sig);
    let flat = flatten(&split, &sig);
    let lin = linearize(&flat, &sig);
    for (title, cs) in [("split", &split), ("flattened", &flat), ("linearized", &lin)] {
        println!("{title}:");
        for c in cs {
            println!("  {c}");
        }
    }
}
