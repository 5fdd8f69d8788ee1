use std::collections::BTreeMap;

use crate::syntax::simplify::simplify_term;
use crate::syntax::{Atom, Clause, Signature, SymbolDecl, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    /// `f(t̄)` with nested definitions of the same level already replaced.
    pub term: Term,
}

impl Definition {
    pub fn head(&self) -> &str {
        self.term.head().unwrap_or("")
    }

    pub fn as_clause(&self) -> Clause {
        Clause::unit(Atom::eq(Term::cons(&self.name), self.term.clone()))
    }
}

/// Fresh constants introduced for the extension terms of one level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefinitionMap {
    pub level: u32,
    pub entries: Vec<Definition>,
}

impl DefinitionMap {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.entries.iter().find(|d| d.name == name)
    }

    /// Definitions grouped by head symbol, symbols in order of first definition.
    pub fn by_symbol(&self) -> Vec<(&str, Vec<&Definition>)> {
        let mut out: Vec<(&str, Vec<&Definition>)> = Vec::new();
        for d in &self.entries {
            match out.iter_mut().find(|(f, _)| *f == d.head()) {
                Some((_, ds)) => ds.push(d),
                None => out.push((d.head(), vec![d])),
            }
        }
        out
    }

    /// Replaces every defined constant by its term, recursively.
    pub fn unfold_clause(&self, c: &Clause) -> Clause {
        let sigma = self.unfolding();
        c.map_terms(&mut |t| subst_consts(t, &sigma))
    }

    fn unfolding(&self) -> BTreeMap<String, Term> {
        let mut out: BTreeMap<String, Term> = BTreeMap::new();
        for d in &self.entries {
            let t = subst_consts(&d.term, &out);
            out.insert(d.name.clone(), t);
        }
        out
    }
}

fn subst_consts(t: &Term, sigma: &BTreeMap<String, Term>) -> Term {
    t.map_bottom_up(&mut |t| match t {
        Term::Const(c) => sigma.get(&c).cloned().unwrap_or(Term::Const(c)),
        t => t,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Purified {
    pub definitions: DefinitionMap,
    pub instances: Vec<Clause>,
    pub query: Vec<Clause>,
    /// False when a non-ground term of the level survived.
    pub ground: bool,
}

fn is_level_app(t: &Term, level: u32, sig: &Signature) -> bool {
    matches!(t, Term::App(f, _) if sig.is_ext(f) && sig.level_of(f) == level)
}

fn depth(t: &Term, level: u32, sig: &Signature) -> usize {
    let inner = match t {
        Term::App(_, args) => args.iter().map(|a| depth(a, level, sig)).max().unwrap_or(0),
        Term::Arith(_, l, r) => depth(l, level, sig).max(depth(r, level, sig)),
        _ => 0,
    };
    inner + usize::from(is_level_app(t, level, sig))
}

fn replace(t: &Term, level: u32, sig: &Signature, names: &BTreeMap<Term, String>) -> Term {
    if is_level_app(t, level, sig) && t.is_ground() {
        if let Some(n) = names.get(&simplify_term(t)) {
            return Term::cons(n);
        }
    }
    match t {
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| replace(a, level, sig, names)).collect()),
        Term::Arith(op, l, r) => Term::arith(*op, replace(l, level, sig, names), replace(r, level, sig, names)),
        t => t.clone(),
    }
}

/// Replaces the ground extension terms of `level` by fresh constants `e_k`,
/// numbering from `*next`.
pub fn purify(instances: &[Clause], query: &[Clause], level: u32, sig: &mut Signature, next: &mut usize) -> Purified {
    let mut found: Vec<Term> = Vec::new();
    let mut ground = true;
    for c in instances.iter().chain(query) {
        let mut visit = |t: &Term| {
            if is_level_app(t, level, sig) {
                if t.is_ground() {
                    let s = simplify_term(t);
                    if !found.contains(&s) {
                        found.push(s);
                    }
                } else {
                    ground = false;
                }
            }
        };
        c.visit_terms(&mut |t| visit(t));
        if let Some(g) = &c.guard {
            g.phi.visit_atoms(&mut |a| a.visit_terms(&mut |t| visit(t)));
        }
    }
    found.sort_by_cached_key(|t| {
        let args: Vec<String> = t.args().iter().map(crate::syntax::print::sort_key).collect();
        (depth(t, level, sig), t.head().unwrap_or("").to_string(), args)
    });
    let mut names: BTreeMap<Term, String> = BTreeMap::new();
    let mut definitions = DefinitionMap { level, entries: Vec::new() };
    for t in found {
        let name = sig.fresh_indexed("e_", *next, &Default::default());
        *next = name[2..].parse::<usize>().map(|k| k + 1).unwrap_or(*next + 1);
        let range = sig.get(t.head().unwrap_or("")).map(|d| d.range).unwrap_or(sig.default_numeric);
        sig.add(SymbolDecl::constant(&name, range).implicit()).expect("fresh name");
        let term = match &t {
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| replace(a, level, sig, &names)).collect()),
            t => t.clone(),
        };
        names.insert(t, name.clone());
        definitions.entries.push(Definition { name, term });
    }
    let sig_ref: &Signature = sig;
    let rewrite = |cs: &[Clause]| -> Vec<Clause> {
        cs.iter().map(|c| c.map_terms(&mut |t| replace(t, level, sig_ref, &names)).with_level(sig_ref)).collect()
    };
    Purified { instances: rewrite(instances), query: rewrite(query), definitions, ground }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sort;

    fn sig() -> Signature {
        let mut sig = Signature::new(Sort::Int);
        sig.add(SymbolDecl::ext("f", 1, 1, Sort::Int, Sort::Int)).unwrap();
        sig.add(SymbolDecl::ext("g", 1, 1, Sort::Int, Sort::Int)).unwrap();
        sig.add(SymbolDecl::ext("h", 1, 2, Sort::Int, Sort::Int)).unwrap();
        sig
    }

    #[test]
    fn nested_terms_are_named_inside_out() {
        let mut sig = sig();
        let q = Clause::unit(Atom::eq(Term::app("f", vec![Term::app("g", vec![Term::cons("c")])]), Term::cons("d")));
        let mut next = 1;
        let p = purify(&[], &[q.clone()], 1, &mut sig, &mut next);
        let shown: Vec<String> = p.definitions.entries.iter().map(|d| format!("{} = {}", d.name, d.term)).collect();
        assert_eq!(shown, ["e_1 = g(c)", "e_2 = f(e_1)"]);
        assert_eq!(p.query[0].to_string(), " ---> e_2 = d");
        assert_eq!(next, 3);
        assert!(p.ground);
        assert_eq!(p.definitions.unfold_clause(&p.query[0]), q);
        assert!(sig.get("e_2").is_some_and(|d| d.implicit));
    }

    #[test]
    fn other_levels_are_left_alone() {
        let mut sig = sig();
        let q = Clause::unit(Atom::eq(Term::app("h", vec![Term::app("f", vec![Term::cons("c")])]), Term::Num(0)));
        let mut next = 4;
        let p = purify(&[], &[q], 2, &mut sig, &mut next);
        assert_eq!(p.definitions.entries[0].name, "e_4");
        assert_eq!(p.definitions.entries[0].term.to_string(), "h(f(c))");
        let p = purify(&[], &p.query, 1, &mut sig, &mut next);
        assert_eq!(p.query[0].to_string(), " ---> e_4 = _0");
        assert!(p.definitions.is_empty());
    }

    #[test]
    fn equal_after_simplification_share_a_name() {
        let mut sig = sig();
        let a = Term::app("f", vec![Term::plus(Term::cons("c"), 0)]);
        let b = Term::app("f", vec![Term::cons("c")]);
        let q = Clause::ground(vec![Atom::eq(a, b)], vec![]);
        let mut next = 1;
        let p = purify(&[], &[q], 1, &mut sig, &mut next);
        assert_eq!(p.definitions.len(), 1);
        assert_eq!(p.query[0].to_string(), "e_1 = e_1 ---> ");
    }

    #[test]
    fn non_ground_terms_clear_the_flag() {
        let mut sig = sig();
        let c = Clause::new(
            vec![crate::syntax::Var::new("x", Sort::Int)],
            vec![],
            vec![Atom::eq(Term::app("f", vec![Term::var("x")]), Term::Num(0))],
        );
        let mut next = 1;
        assert!(!purify(&[c], &[], 1, &mut sig, &mut next).ground);
    }
}
