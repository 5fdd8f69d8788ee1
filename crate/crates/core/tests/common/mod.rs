//! Shared helpers for the integration tests.
#![allow(dead_code)]

pub mod oracle;

use std::path::{Path, PathBuf};

use hpilot::backend::{solve, SolveResult, SolverConfig};
use hpilot::pipeline::{parse, prepare, reduce, Options, Prepared};
use hpilot::reduce::Reduction;
use hpilot::syntax::{Atom, Clause, Term};

pub fn corpus_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_file(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn prepare_corpus(name: &str, opts: &Options) -> (Prepared, Reduction) {
    let task = parse(&read_corpus(name), opts).unwrap_or_else(|e| panic!("{name}: {e}"));
    let prepared = prepare(task, opts).unwrap_or_else(|e| panic!("{name}: {e}"));
    let reduction = reduce(&prepared, opts);
    (prepared, reduction)
}

/// Reduces and solves a corpus file, writing the script into a temporary directory.
pub fn solve_corpus(name: &str, opts: &Options, model: bool) -> (Prepared, Reduction, SolveResult) {
    let (prepared, reduction) = prepare_corpus(name, opts);
    let dir = tempfile::tempdir().unwrap();
    let config = SolverConfig::from_env().unwrap();
    let result = solve(&reduction, &dir.path().join("script.smt2"), &config, prepared.report.all_local, model).unwrap();
    (prepared, reduction, result)
}

/// Options corresponding to a corpus file's command-line flags.
pub fn flags(list: &[&str]) -> Options {
    let mut o = Options::default();
    let mut it = list.iter();
    while let Some(f) = it.next() {
        match *f {
            "-preprocess" => o.preprocess = true,
            "-arrays" => {
                o.arrays = true;
                o.preprocess = true;
                o.min = true;
            }
            "-real" => o.real = true,
            "-isLocal" => o.is_local = it.next() == Some(&"true"),
            other => panic!("unexpected flag {other}"),
        }
    }
    o
}

fn rename_term(t: &Term, map: &[(String, String)]) -> Term {
    t.map_bottom_up(&mut |t| match t {
        Term::Var(v) => Term::Var(map.iter().find(|(a, _)| *a == v).map(|(_, b)| b.clone()).unwrap_or(v)),
        t => t,
    })
}

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

fn sorted(atoms: &[Atom]) -> Vec<Atom> {
    let mut v = atoms.to_vec();
    v.sort();
    v
}

/// Equality of clauses up to a bijective renaming of their variables and the order of literals.
pub fn equal_modulo_renaming(a: &Clause, b: &Clause) -> bool {
    if a.vars.len() != b.vars.len() || a.guard.is_some() || b.guard.is_some() {
        return false;
    }
    let from: Vec<String> = a.vars.iter().map(|v| v.name.clone()).collect();
    let to: Vec<String> = b.vars.iter().map(|v| v.name.clone()).collect();
    permutations(&to).into_iter().any(|perm| {
        let map: Vec<(String, String)> = from.iter().cloned().zip(perm).collect();
        let sorts_agree = map.iter().all(|(x, y)| a.var_sort(x) == b.var_sort(y));
        let r = a.map_terms(&mut |t| rename_term(t, &map));
        sorts_agree && sorted(&r.antecedent) == sorted(&b.antecedent) && sorted(&r.consequent) == sorted(&b.consequent)
    })
}
