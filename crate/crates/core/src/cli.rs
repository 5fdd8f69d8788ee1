//! Command-line front end: flag parsing, the run, and what gets printed where.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::backend::{emit, solve, EmitOptions, SolverConfig, Verdict};
use crate::error::Error;
use crate::pipeline::{parse, prepare, reduce, Options, Prepared};
use crate::reduce::Reduction;
use crate::syntax::Clause;

pub const USAGE: &str = "\
usage: hpilot [flags] FILE.loc

  -prClauses              print every clause set of the reduction (stderr)
  -noProver               stop after the reduction and print the result
  -noSeparation           stop after computing the instances
  -flatten                flatten the extension clauses
  -linearize              linearize the extension clauses
  -flattenQuery           flatten the query too
  -preprocess             flatten and linearize
  -arrays                 array mode (implies -preprocess and -min)
  -min                    minimal instantiation over array index terms
  -unPseudofy             remove variables bound by equations
  -isLocal true|false     assert that the extension is local (default false)
  -real                   numerals and unannotated constants are real
  -model                  print the model when the answer is sat
  -smt                    write FILE.smt2 without calling the solver
  -verbosity 0|1|2        0 verdict and timing, 1 fragments and counts, 2 full trace
  -version                print the version
  -help                   print this text
  --solver CMD            solver command, `{}` marks the script (default: $HPILOT_SOLVER or z3)
  --timeout SECS          solver time limit
  --dot FILE              write the pointer functions of a model as Graphviz
  --no-clausify           reject Formulas sections instead of clausifying them
  --rename-subformulas B  name subformulas during clausification (default true)

exit codes: 0 unsat, 1 sat, 2 unknown, 3 usage or input error
";

#[derive(Clone, Debug, PartialEq)]
pub struct CliArgs {
    pub options: Options,
    pub pr_clauses: bool,
    pub no_prover: bool,
    pub model: bool,
    pub smt: bool,
    pub verbosity: u8,
    pub solver: Option<String>,
    pub timeout: Option<Duration>,
    pub dot: Option<PathBuf>,
    pub input: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Run(Box<CliArgs>),
    Help,
    Version,
}

fn bool_value(flag: &str, v: Option<&String>) -> Result<bool, String> {
    match v.map(String::as_str) {
        Some("true") => Ok(true),
        Some("false") => Ok(false),
        Some(other) => Err(format!("{flag} expects true or false, found `{other}`")),
        None => Err(format!("{flag} expects true or false")),
    }
}

pub fn parse_args(argv: &[String]) -> Result<Command, String> {
    let mut o = Options::default();
    let (mut pr, mut no_prover, mut model, mut smt) = (false, false, false, false);
    let mut verbosity = 0;
    let (mut solver, mut timeout, mut dot, mut input) = (None, None, None, None);
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        match a.as_str() {
            "-help" | "--help" | "-h" => return Ok(Command::Help),
            "-version" | "--version" => return Ok(Command::Version),
            "-prClauses" => pr = true,
            "-noProver" => no_prover = true,
            "-noSeparation" => o.no_separation = true,
            "-flatten" => o.flatten = true,
            "-linearize" => o.linearize = true,
            "-flattenQuery" => o.flatten_query = true,
            "-preprocess" => o.preprocess = true,
            "-arrays" => {
                o.arrays = true;
                o.preprocess = true;
                o.min = true;
            }
            "-min" => o.min = true,
            "-unPseudofy" => o.unpseudofy = true,
            "-isLocal" => o.is_local = bool_value(a, it.next())?,
            "-real" => o.real = true,
            "-model" => model = true,
            "-smt" => smt = true,
            "-verbosity" => {
                verbosity = match it.next().map(String::as_str) {
                    Some("0") => 0,
                    Some("1") => 1,
                    Some("2") => 2,
                    _ => return Err("-verbosity expects 0, 1 or 2".into()),
                }
            }
            "--solver" => solver = Some(it.next().ok_or("--solver expects a command")?.clone()),
            "--timeout" => {
                let secs: f64 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .filter(|s: &f64| s.is_finite() && *s > 0.0)
                    .ok_or("--timeout expects a positive number of seconds")?;
                timeout = Some(Duration::from_secs_f64(secs));
            }
            "--dot" => dot = Some(PathBuf::from(it.next().ok_or("--dot expects a file name")?)),
            "--no-clausify" => o.clausify = false,
            "--rename-subformulas" => o.rename = bool_value(a, it.next())?,
            f if f.starts_with('-') => return Err(format!("unknown flag `{f}`")),
            f => {
                if input.replace(PathBuf::from(f)).is_some() {
                    return Err("more than one input file".into());
                }
            }
        }
    }
    let input = input.ok_or("no input file")?;
    Ok(Command::Run(Box::new(CliArgs {
        options: o,
        pr_clauses: pr,
        no_prover,
        model,
        smt,
        verbosity,
        solver,
        timeout,
        dot,
        input,
    })))
}

/// `<stem>.smt2` next to the input.
pub fn script_path(input: &Path) -> PathBuf {
    input.with_extension("smt2")
}

fn clause_block(out: &mut String, title: &str, cs: &[Clause]) {
    let _ = writeln!(out, "{title}");
    for c in cs {
        let _ = writeln!(out, "  {c}    L: {}", c.level);
    }
}

/// Fragment classification and the per-level counts.
pub fn summary(p: &Prepared, r: &Reduction) -> String {
    let mut out = String::new();
    for c in &p.report.per_clause {
        let _ = write!(out, "clause {}: {}", c.index + 1, c.fragment);
        if !c.reason.is_empty() {
            let _ = write!(out, " ({})", c.reason);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "locality: {}", if p.report.all_local { "established" } else { "not established" });
    for l in &r.levels {
        let _ = writeln!(
            out,
            "level {}: {} terms, {} instances, {} definitions, {} congruence clauses",
            l.level,
            l.terms.len(),
            l.instances.len(),
            l.definitions.len(),
            l.congruence.len()
        );
    }
    let _ = writeln!(out, "Total number of clauses: {}.", r.total());
    out
}

/// Every clause set of the reduction, level by level.
pub fn trace(p: &Prepared, r: &Reduction) -> String {
    let mut out = String::new();
    clause_block(&mut out, "Base axioms:", &p.task.base_axioms);
    clause_block(&mut out, "Extension clauses:", &p.task.extension_axioms);
    clause_block(&mut out, "Query:", &p.task.query);
    for l in &r.levels {
        let _ = writeln!(out, "\n== level {}", l.level);
        let terms: Vec<String> = l.terms.iter().map(|t| crate::syntax::print::Prefix(t).to_string()).collect();
        let kind = if p.array_mode { "index terms" } else { "ground terms" };
        let _ = writeln!(out, "{} {kind}: {}", terms.len(), terms.join(", "));
        clause_block(&mut out, &format!("K[G] ({} clauses):", l.instances.len()), &l.instances);
        let _ = writeln!(out, "Definitions ({}):", l.definitions.len());
        for d in &l.definitions.entries {
            let _ = writeln!(out, "   ---> {} = {}", d.name, crate::syntax::print::Prefix(&d.term));
        }
        clause_block(&mut out, &format!("Congruence axioms ({} clauses):", l.congruence.len()), &l.congruence);
        if !l.lowered.is_empty() {
            clause_block(&mut out, "Moved to lower levels:", &l.lowered);
        }
    }
    out.push('\n');
    clause_block(&mut out, &format!("Clauses for the base prover ({}):", r.total()), &r.level0());
    out
}

fn fail(err: &mut dyn Write, path: &Path, e: &Error) -> i32 {
    let _ = writeln!(err, "hpilot: {}: {e}", path.display());
    3
}

/// Runs the tool; the return value is the process exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match parse_args(argv) {
        Ok(Command::Help) => {
            let _ = write!(out, "{USAGE}");
            return 0;
        }
        Ok(Command::Version) => {
            let _ = writeln!(out, "hpilot {}", env!("CARGO_PKG_VERSION"));
            return 0;
        }
        Ok(Command::Run(a)) => a,
        Err(msg) => {
            let _ = write!(err, "hpilot: {msg}\n\n{USAGE}");
            return 3;
        }
    };
    let started = Instant::now();
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return fail(err, &args.input, &e.into()),
    };
    let prepared = match parse(&text, &args.options).and_then(|t| prepare(t, &args.options)) {
        Ok(p) => p,
        Err(e) => return fail(err, &args.input, &e),
    };
    for w in &prepared.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let reduction = reduce(&prepared, &args.options);
    if args.verbosity >= 1 {
        let _ = write!(err, "{}", summary(&prepared, &reduction));
    }
    if args.pr_clauses || args.verbosity >= 2 {
        let _ = write!(err, "{}", trace(&prepared, &reduction));
    }
    let reduce_time = started.elapsed();
    if args.no_prover || !reduction.separated {
        for c in reduction.level0().iter().chain(&reduction.remaining) {
            let _ = writeln!(out, "{c}");
        }
        if !reduction.separated {
            for l in &reduction.levels {
                for c in &l.instances {
                    let _ = writeln!(out, "{c}");
                }
            }
        }
        return 2;
    }
    let script = script_path(&args.input);
    if args.smt {
        let text = emit(&reduction.level0(), &reduction.signature, &EmitOptions { model: args.model });
        if let Err(e) = std::fs::write(&script, text) {
            return fail(err, &script, &e.into());
        }
        let _ = writeln!(out, "wrote {}", script.display());
        return 2;
    }
    let (verdict, solver_time) = match &reduction.abort {
        Some(reason) => (Verdict::Unknown(reason.clone()), Duration::ZERO),
        None => {
            let config = match &args.solver {
                Some(cmd) => SolverConfig::parse(cmd),
                None => SolverConfig::from_env(),
            };
            let config = match config {
                Ok(c) => c.with_timeout(args.timeout),
                Err(e) => return fail(err, &args.input, &e),
            };
            let want_model = args.model || args.dot.is_some();
            match solve(&reduction, &script, &config, prepared.report.all_local, want_model) {
                Ok(r) => (r.verdict, r.solver_time),
                Err(e) => (Verdict::Unknown(e.to_string()), Duration::ZERO),
            }
        }
    };
    let _ = writeln!(out, "{}", verdict.word());
    if let Verdict::Unknown(reason) = &verdict {
        let _ = writeln!(err, "reason: {reason}");
    }
    if let Verdict::Sat(Some(m)) = &verdict {
        if args.model {
            for line in m.extension.listing(&m.base, &reduction.signature) {
                let _ = writeln!(out, "{line}");
            }
        }
        if let Some(path) = &args.dot {
            if let Err(e) = std::fs::write(path, m.extension.dot(&reduction.signature)) {
                return fail(err, path, &e.into());
            }
        }
    }
    let _ = writeln!(out, "Reduction time: {:.3}s.", reduce_time.as_secs_f64());
    let _ = writeln!(out, "Solver time: {:.3}s.", solver_time.as_secs_f64());
    verdict.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn arrays_implies_preprocess_and_min() {
        let Command::Run(a) = parse_args(&args("-arrays x.loc")).unwrap() else { panic!() };
        assert!(a.options.arrays && a.options.preprocess && a.options.min);
    }

    #[test]
    fn valued_flags() {
        let Command::Run(a) = parse_args(&args("-isLocal true -verbosity 2 --solver cvc5 x.loc")).unwrap() else { panic!() };
        assert!(a.options.is_local);
        assert_eq!(a.verbosity, 2);
        assert_eq!(a.solver.as_deref(), Some("cvc5"));
        assert!(parse_args(&args("-isLocal maybe x.loc")).is_err());
        assert!(parse_args(&args("-verbosity 3 x.loc")).is_err());
        assert!(parse_args(&args("-bogus x.loc")).is_err());
        assert!(parse_args(&args("-model")).is_err());
        assert_eq!(parse_args(&args("-help")).unwrap(), Command::Help);
    }

    #[test]
    fn usage_error_exit_code() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(&args("-nope"), &mut out, &mut err), 3);
        assert!(String::from_utf8(err).unwrap().contains("unknown flag"));
    }
}
