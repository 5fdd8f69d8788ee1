//! Runs a `.loc` file through the solver and prints the verdict, plus the model when there is one.
//!
//! `cargo run --example solve -- corpus/mono.sat.loc -isLocal true`

use std::{env, fs};

use hpilot::backend::{solve, Evaluator, SolverConfig, Verdict};
use hpilot::pipeline::{parse, prepare, reduce, Options};

fn main() {
    let args: Vec<String> = env::args().skip(1).collect();
    let path = args
        .iter()
        .find(|a| a.ends_with(".loc"))
        .cloned()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/mono.sat.loc").into());
    let has = |f: &str| args.iter().any(|a| a == f);
    let opts = Options {
        preprocess: has("-preprocess"),
        arrays: has("-arrays"),
        real: has("-real"),
        is_local: args.windows(2).any(|w| w[0] == "-isLocal" && w[1] == "true"),
        ..Options::default()
    };
    let task = parse(&fs::read_to_string(&path).expect("readable input"), &opts).expect("well-formed input");
    let prepared = prepare(task, &opts).expect("preprocessing");
    let r = reduce(&prepared, &opts);
    let dir = tempfile::tempdir().expect("temp dir");
    let config = SolverConfig::from_env().expect("solver command");
    let out = solve(&r, &dir.path().join("problem.smt2"), &config, prepared.report.all_local, true).expect("solver run");
    println!("{}  ({} clauses, solver {:.3}s)", out.verdict.word(), r.total(), out.solver_time.as_secs_f64());
    if let Verdict::Unknown(reason) = &out.verdict {
        println!("reason: {reason}");
    }
    if let Verdict::Sat(Some(m)) = &out.verdict {
        for line in m.extension.listing(&m.base, &r.signature) {
            println!("  {line}");
        }
        let ev = Evaluator { sig: &r.signature, base: &m.base, ext: &m.extension };
        for c in &prepared.task.query {
            println!("  {:5}  {c}", ev.clause(c).map(|b| b.to_string()).unwrap_or_else(|e| e.to_string()));
        }
    }
}
