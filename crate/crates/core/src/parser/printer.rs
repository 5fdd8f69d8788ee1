use std::fmt::Write;

use crate::syntax::print::loc_clause;
use crate::syntax::{Clause, Formula, Sort, SymbolDecl, SymbolKind, Task};

fn decl(d: &SymbolDecl) -> String {
    if d.kind == SymbolKind::ExtFun || d.level > 0 {
        format!("({}, {}, {}, {}, {})", d.name, d.arity, d.level, d.domain, d.range)
    } else {
        format!("({}, {}, 0, {}, {})", d.name, d.arity, d.domain, d.range)
    }
}

fn clauses(out: &mut String, header: &str, cs: &[Clause]) {
    if cs.is_empty() {
        return;
    }
    let _ = writeln!(out, "\n{header} :=");
    for c in cs {
        let _ = writeln!(out, "    {};", loc_clause(c));
    }
}

fn formulas(out: &mut String, header: &str, fs: &[Formula]) {
    if fs.is_empty() {
        return;
    }
    let _ = writeln!(out, "\n{header} :=");
    for f in fs {
        let _ = writeln!(out, "    {f};");
    }
}

/// Prints a task in the input syntax; the result parses back to an equal task.
pub fn print_task(task: &Task) -> String {
    let sig = &task.signature;
    let mut out = String::new();
    let real = sig.default_numeric == Sort::Real;
    let mut base: Vec<String> = ["+", "-", "*", "/"]
        .iter()
        .map(|op| if real { format!("({op}, 2, 0, real, real)") } else { format!("({op}, 2)") })
        .collect();
    base.extend(sig.decls().iter().filter(|d| d.kind == SymbolKind::BaseFun).map(decl));
    let ext: Vec<String> = sig.decls().iter().filter(|d| d.kind == SymbolKind::ExtFun).map(decl).collect();
    let mut rels: Vec<String> = ["<=", "<", ">=", ">"].iter().map(|r| format!("({r}, 2)")).collect();
    rels.extend(sig.decls().iter().filter(|d| d.kind == SymbolKind::Relation).map(|d| format!("({}, {})", d.name, d.arity)));
    let _ = writeln!(out, "Base_functions := {{{}}}", base.join(", "));
    let _ = writeln!(out, "Extension_functions := {{{}}}", ext.join(", "));
    let _ = writeln!(out, "Relations := {{{}}}", rels.join(", "));
    let consts: Vec<String> = sig
        .constants()
        .filter(|d| !d.implicit)
        .map(|d| format!("({}, {})", d.name, d.range))
        .collect();
    if !consts.is_empty() {
        let _ = writeln!(out, "Constants := {{{}}}", consts.join(", "));
    }
    if let Some(iv) = sig.interval {
        let mut s = String::new();
        if let Some((lo, strict)) = iv.lower {
            let _ = write!(s, "{lo} {} ", if strict { "<" } else { "<=" });
        }
        s.push('x');
        if let Some((hi, strict)) = iv.upper {
            let _ = write!(s, " {} {hi}", if strict { "<" } else { "<=" });
        }
        let _ = writeln!(out, "Interval := {s};");
    }
    if !sig.stable_levels.is_empty() {
        let ls: Vec<String> = sig.stable_levels.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(out, "Stable := {};", ls.join(", "));
    }
    clauses(&mut out, "Base", &task.base_axioms);
    clauses(&mut out, "Clauses", &task.extension_axioms);
    formulas(&mut out, "Formulas", &task.formulas);
    formulas(&mut out, "Ground_Formulas", &task.ground_formulas);
    let _ = writeln!(out, "\nQuery :=");
    for c in &task.query {
        let _ = writeln!(out, "    {};", loc_clause(c));
    }
    out
}
