//! SMT-LIB 2 scripts for the reduced clause set.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::syntax::typing::{atom_sort, term_sort};
use crate::syntax::{ArithOp, Atom, Clause, Formula, Signature, Sort, SymbolKind, Term, Var};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmitOptions {
    /// Ask for a model after `(check-sat)`.
    pub model: bool,
}

const RESERVED: &[&str] = &[
    "and", "or", "not", "xor", "ite", "distinct", "true", "false", "abs", "div", "mod", "let", "forall", "exists", "assert",
    "par", "as", "to_real", "to_int", "is_int", "Int", "Real", "Bool", "_", "!",
];

/// A symbol in SMT-LIB syntax, quoted when it is not a plain simple symbol.
pub fn smt_symbol(name: &str) -> String {
    let plain = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
        && !RESERVED.contains(&name);
    if plain {
        name.to_string()
    } else {
        format!("|{}|", name.replace('|', "_"))
    }
}

pub fn smt_sort(s: Sort) -> String {
    match s {
        Sort::Int => "Int".into(),
        Sort::Real => "Real".into(),
        Sort::Bool => "Bool".into(),
        Sort::Scalar => "scalar".into(),
        Sort::Pointer(1) => "pointer".into(),
        Sort::Pointer(k) => format!("pointer_{k}"),
        Sort::Free(1) => "free".into(),
        Sort::Free(k) => format!("free_{k}"),
    }
}

struct Ctx<'a> {
    sig: &'a Signature,
    vars: Vec<Var>,
}

impl Ctx<'_> {
    fn var_sort(&self, v: &str) -> Option<Sort> {
        self.vars.iter().rev().find(|w| w.name == v).map(|w| w.sort)
    }

    fn sort_of(&self, t: &Term) -> Option<Sort> {
        term_sort(t, self.sig, &|v| self.var_sort(v))
    }

    fn term(&self, t: &Term, ctx: Sort) -> String {
        match t {
            Term::Var(v) | Term::Const(v) => smt_symbol(v),
            Term::Num(n) => numeral(*n, ctx),
            Term::App(f, args) => {
                let domain = self.sig.get(f).map(|d| d.domain).unwrap_or(ctx);
                let args: Vec<String> = args.iter().map(|a| self.term(a, domain)).collect();
                if args.is_empty() {
                    smt_symbol(f)
                } else {
                    format!("({} {})", smt_symbol(f), args.join(" "))
                }
            }
            Term::Arith(op, l, r) => {
                let ctx = self.sort_of(t).unwrap_or(ctx);
                let op = match (op, ctx) {
                    (ArithOp::Div, Sort::Int) => "div",
                    (op, _) => op.symbol(),
                };
                format!("({op} {} {})", self.term(l, ctx), self.term(r, ctx))
            }
            Term::Read(..) => unreachable!("writes are eliminated before emission"),
        }
    }

    fn atom(&self, a: &Atom) -> String {
        let ctx = atom_sort(a, self.sig, &|v| self.var_sort(v)).unwrap_or(self.sig.default_numeric);
        match a {
            Atom::Eq(l, r) => format!("(= {} {})", self.term(l, ctx), self.term(r, ctx)),
            Atom::Ineq(rel, l, r) => format!("({} {} {})", rel.symbol(), self.term(l, ctx), self.term(r, ctx)),
            Atom::Pred(p, args) => {
                let domain = self.sig.get(p).map(|d| d.domain).unwrap_or(self.sig.default_numeric);
                let args: Vec<String> = args.iter().map(|t| self.term(t, domain)).collect();
                if args.is_empty() {
                    smt_symbol(p)
                } else {
                    format!("({} {})", smt_symbol(p), args.join(" "))
                }
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> String {
        match f {
            Formula::Atom(a) => self.atom(a),
            Formula::Not(g) => format!("(not {})", self.formula(g)),
            Formula::And(gs) if gs.is_empty() => "true".into(),
            Formula::Or(gs) if gs.is_empty() => "false".into(),
            Formula::And(gs) => format!("(and {})", gs.iter().map(|g| self.formula(g)).collect::<Vec<_>>().join(" ")),
            Formula::Or(gs) => format!("(or {})", gs.iter().map(|g| self.formula(g)).collect::<Vec<_>>().join(" ")),
            Formula::Implies(a, b) => format!("(=> {} {})", self.formula(a), self.formula(b)),
            Formula::Iff(a, b) => format!("(= {} {})", self.formula(a), self.formula(b)),
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                let q = if matches!(f, Formula::Forall(..)) { "forall" } else { "exists" };
                let n = self.vars.len();
                self.vars.extend(vs.iter().cloned());
                let body = self.formula(g);
                self.vars.truncate(n);
                format!("({q} ({}) {body})", binders(vs))
            }
        }
    }
}

fn numeral(n: i64, ctx: Sort) -> String {
    let digits = if ctx == Sort::Real { format!("{}.0", n.unsigned_abs()) } else { n.unsigned_abs().to_string() };
    if n < 0 {
        format!("(- {digits})")
    } else {
        digits
    }
}

fn binders(vs: &[Var]) -> String {
    vs.iter().map(|v| format!("({} {})", smt_symbol(&v.name), smt_sort(v.sort))).collect::<Vec<_>>().join(" ")
}

fn bounds(sig: &Signature, x: &str) -> Vec<String> {
    let Some(iv) = sig.interval else { return Vec::new() };
    let num = |k: i64| numeral(k, sig.default_numeric);
    let mut out = Vec::new();
    if let Some((lo, strict)) = iv.lower {
        out.push(format!("({} {} {x})", if strict { "<" } else { "<=" }, num(lo)));
    }
    if let Some((hi, strict)) = iv.upper {
        out.push(format!("({} {x} {})", if strict { "<" } else { "<=" }, num(hi)));
    }
    out
}

/// Assertion body for one clause.
pub fn clause_assertion(c: &Clause, sig: &Signature) -> String {
    let mut ctx = Ctx { sig, vars: c.vars.clone() };
    let mut lits: Vec<String> = Vec::new();
    for v in &c.vars {
        if v.sort == sig.default_numeric {
            lits.extend(bounds(sig, &smt_symbol(&v.name)).into_iter().map(|b| format!("(not {b})")));
        }
    }
    if let Some(g) = &c.guard {
        lits.push(ctx.formula(&g.as_disjunct()));
    }
    lits.extend(c.antecedent.iter().map(|a| format!("(not {})", ctx.atom(a))));
    lits.extend(c.consequent.iter().map(|a| ctx.atom(a)));
    let body = match lits.len() {
        0 => "false".to_string(),
        1 => lits.pop().unwrap(),
        _ => format!("(or {})", lits.join(" ")),
    };
    if c.vars.is_empty() {
        body
    } else {
        format!("(forall ({}) {body})", binders(&c.vars))
    }
}

fn used_symbols(clauses: &[Clause]) -> BTreeSet<String> {
    fn term(t: &Term, used: &mut BTreeSet<String>) {
        if let Term::Const(c) | Term::App(c, _) = t {
            used.insert(c.clone());
        }
    }
    fn atom(a: &Atom, used: &mut BTreeSet<String>) {
        if let Atom::Pred(p, _) = a {
            used.insert(p.clone());
        }
        a.visit_terms(&mut |t| term(t, used));
    }
    let mut used = BTreeSet::new();
    for c in clauses {
        c.atoms().for_each(|a| atom(a, &mut used));
        if let Some(g) = &c.guard {
            g.phi.visit_atoms(&mut |a| atom(a, &mut used));
        }
    }
    used
}

fn nonlinear(clauses: &[Clause]) -> bool {
    let mut found = false;
    for c in clauses {
        c.visit_terms(&mut |t| {
            if let Term::Arith(op @ (ArithOp::Mul | ArithOp::Div), l, r) = t {
                let num = |t: &Term| matches!(t, Term::Num(_));
                found |= match op {
                    ArithOp::Mul => !num(l) && !num(r),
                    _ => !num(r),
                };
            }
        });
    }
    found
}

/// Logic name from the sorts, symbols and quantifiers present.
pub fn logic(clauses: &[Clause], sig: &Signature) -> String {
    let used = used_symbols(clauses);
    let decls: Vec<_> = sig.decls().iter().filter(|d| used.contains(&d.name)).collect();
    let mut sorts: BTreeSet<Sort> = decls.iter().flat_map(|d| [d.domain, d.range]).collect();
    let mut arith = false;
    for c in clauses {
        sorts.extend(c.vars.iter().map(|v| v.sort));
        c.visit_terms(&mut |t| arith |= matches!(t, Term::Num(_) | Term::Arith(..)));
        arith |= c.atoms().any(|a| matches!(a, Atom::Ineq(..)));
    }
    if arith {
        sorts.insert(sig.default_numeric);
    }
    let quantified = clauses.iter().any(|c| !c.vars.is_empty() || c.guard.as_ref().is_some_and(|g| g.phi.has_quantifier()));
    let uf = sorts.iter().any(|s| s.is_uninterpreted())
        || decls.iter().any(|d| d.arity > 0 && d.kind != SymbolKind::Constant);
    let (int, real) = (sorts.contains(&Sort::Int), sorts.contains(&Sort::Real));
    let lin = if nonlinear(clauses) { "N" } else { "L" };
    let arith = match (int, real) {
        (true, true) => format!("{lin}IRA"),
        (true, false) => format!("{lin}IA"),
        (false, true) => format!("{lin}RA"),
        (false, false) => String::new(),
    };
    let uf = if uf || arith.is_empty() { "UF" } else { "" };
    format!("{}{uf}{arith}", if quantified { "" } else { "QF_" })
}

/// The full script: logic, declarations, interval bounds, assertions, check.
pub fn emit(clauses: &[Clause], sig: &Signature, opts: &EmitOptions) -> String {
    let used = used_symbols(clauses);
    let mut out = String::new();
    if opts.model {
        out.push_str("(set-option :produce-models true)\n");
    }
    let _ = writeln!(out, "(set-logic {})", logic(clauses, sig));
    let decls: Vec<_> = sig.decls().iter().filter(|d| used.contains(&d.name) && !d.is_arith_op()).collect();
    let mut sorts: BTreeSet<Sort> = decls.iter().flat_map(|d| [d.domain, d.range]).collect();
    sorts.extend(clauses.iter().flat_map(|c| c.vars.iter().map(|v| v.sort)));
    for s in sorts.iter().filter(|s| s.is_uninterpreted()) {
        let _ = writeln!(out, "(declare-sort {} 0)", smt_sort(*s));
    }
    for d in &decls {
        let domain = vec![smt_sort(d.domain); d.arity].join(" ");
        let range = if d.kind == SymbolKind::Relation { "Bool".to_string() } else { smt_sort(d.range) };
        let _ = writeln!(out, "(declare-fun {} ({domain}) {range})", smt_symbol(&d.name));
    }
    for d in decls.iter().filter(|d| d.kind == SymbolKind::Constant && d.range == sig.default_numeric) {
        for b in bounds(sig, &smt_symbol(&d.name)) {
            let _ = writeln!(out, "(assert {b})");
        }
    }
    for c in clauses {
        let _ = writeln!(out, "(assert {})", clause_assertion(c, sig));
    }
    out.push_str("(check-sat)\n");
    if opts.model {
        out.push_str("(get-model)\n");
    }
    out
}
