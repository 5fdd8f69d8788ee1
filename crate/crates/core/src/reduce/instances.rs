use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::syntax::simplify::simplify_term;
use crate::syntax::subst::{apply, Substitution};
use crate::syntax::typing::{atom_sort, term_sort};
use crate::syntax::{Atom, Clause, Signature, Sort, Term, Var};

/// Ground extension terms of one level, indexed by symbol and argument position.
#[derive(Clone, Debug, Default)]
pub struct Store {
    terms: BTreeSet<Term>,
    positions: BTreeMap<String, Vec<Vec<Term>>>,
}

impl Store {
    pub fn new(terms: &[Term]) -> Store {
        let mut store = Store::default();
        for t in terms {
            let Term::App(f, args) = t else { continue };
            store.terms.insert(t.clone());
            let slots = store.positions.entry(f.clone()).or_insert_with(|| vec![Vec::new(); args.len()]);
            for (slot, a) in slots.iter_mut().zip(args) {
                if !slot.contains(a) {
                    slot.push(a.clone());
                }
            }
        }
        store
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    pub fn candidates(&self, f: &str, pos: usize) -> &[Term] {
        self.positions.get(f).and_then(|p| p.get(pos)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Instances of a clause set; `ground` is false when some instance kept a variable.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InstanceSet {
    pub clauses: Vec<Clause>,
    pub ground: bool,
}

fn level_apps<'a>(c: &'a Clause, level: u32, sig: &Signature) -> Vec<&'a Term> {
    let mut out = Vec::new();
    c.visit_terms(&mut |t| {
        if let Term::App(f, _) = t {
            if sig.is_ext(f) && sig.level_of(f) == level {
                out.push(t);
            }
        }
    });
    out
}

/// Simplifies the arguments of extension applications only.
pub fn simplify_ext_args(c: &Clause, sig: &Signature) -> Clause {
    c.map_terms(&mut |t| {
        t.map_bottom_up(&mut |t| match t {
            Term::App(f, args) if sig.is_ext(&f) => Term::App(f, args.iter().map(simplify_term).collect()),
            t => t,
        })
    })
}

/// Every combination of candidates, first variable varying fastest.
fn product(vars: &[(Var, Vec<Term>)]) -> Vec<Substitution> {
    let total: usize = vars.iter().map(|(_, c)| c.len()).product();
    (0..total)
        .map(|mut n| {
            let mut s = Substitution::new();
            for (v, cands) in vars {
                s.insert(v.name.clone(), cands[n % cands.len()].clone());
                n /= cands.len();
            }
            s
        })
        .collect()
}

/// Variables mapped to `None` stay universally quantified.
fn instantiate(c: &Clause, vars: Vec<(Var, Option<Vec<Term>>)>, sig: &Signature, keep: &dyn Fn(&Clause) -> bool, out: &mut InstanceSet, seen: &mut HashSet<Clause>) {
    let mut bound = Vec::new();
    for (v, cands) in vars {
        match cands {
            Some(cands) => bound.push((v, cands)),
            None => out.ground = false,
        }
    }
    for sigma in product(&bound) {
        let mut inst = simplify_ext_args(&apply(c, &sigma), sig);
        inst.level = 0;
        inst = inst.with_level(sig);
        if keep(&inst) && seen.insert(inst.clone()) {
            out.clauses.push(inst);
        }
    }
}

/// Instances where every extension term of `level` is a store term.
pub fn compute_instances(k: &[Clause], store: &Store, level: u32, sig: &Signature) -> InstanceSet {
    let mut out = InstanceSet { clauses: Vec::new(), ground: true };
    let mut seen = HashSet::new();
    let in_store = |inst: &Clause| level_apps(inst, level, sig).iter().all(|t| !t.is_ground() || store.contains(t));
    for c in k {
        let apps = level_apps(c, level, sig);
        let vars: Vec<(Var, Option<Vec<Term>>)> = c
            .vars
            .iter()
            .map(|v| {
                let mut shielded = false;
                let mut cands: Vec<Term> = Vec::new();
                for app in &apps {
                    let Term::App(f, args) = app else { continue };
                    for (pos, a) in args.iter().enumerate() {
                        if matches!(a, Term::Var(x) if *x == v.name) {
                            shielded = true;
                            for t in store.candidates(f, pos) {
                                if !cands.contains(t) {
                                    cands.push(t.clone());
                                }
                            }
                        }
                    }
                }
                cands.sort_by_key(crate::syntax::print::sort_key);
                (v.clone(), shielded.then_some(cands))
            })
            .collect();
        instantiate(c, vars, sig, &in_store, &mut out, &mut seen);
    }
    out
}

/// Index terms for array instantiation, grouped by sort: ground arguments of
/// reads of `level` in `k ∪ g`, plus ground sides of the index guards of `k`.
pub fn array_index_terms(k: &[Clause], g: &[Clause], level: u32, sig: &Signature) -> BTreeMap<Sort, Vec<Term>> {
    let mut found: BTreeMap<Sort, BTreeMap<String, Term>> = BTreeMap::new();
    let mut add = |sort: Sort, t: &Term| {
        let s = simplify_term(t);
        found.entry(sort).or_default().insert(crate::syntax::print::sort_key(&s), s);
    };
    for c in k.iter().chain(g) {
        for app in level_apps(c, level, sig) {
            let Term::App(f, args) = app else { continue };
            let domain = sig.get(f).map(|d| d.domain).unwrap_or(sig.default_numeric);
            for a in args.iter().filter(|a| a.is_ground()) {
                add(domain, a);
            }
        }
    }
    for c in k {
        for a in c.atoms() {
            if a.terms().iter().any(|t| sig.term_level(t) > 0) || a.is_ground() {
                continue;
            }
            let var_sort = |v: &str| c.var_sort(v);
            let sort = atom_sort(a, sig, &var_sort).unwrap_or(sig.default_numeric);
            for t in a.terms() {
                if t.is_ground() {
                    add(term_sort(t, sig, &var_sort).unwrap_or(sort), t);
                }
            }
        }
    }
    found.into_iter().map(|(s, m)| (s, m.into_values().collect())).collect()
}

/// Instances with every variable ranging over all index terms of its sort.
pub fn compute_array_instances(k: &[Clause], index: &BTreeMap<Sort, Vec<Term>>, sig: &Signature) -> InstanceSet {
    let mut out = InstanceSet { clauses: Vec::new(), ground: true };
    let mut seen = HashSet::new();
    for c in k {
        let vars = c.vars.iter().map(|v| (v.clone(), index.get(&v.sort).cloned())).collect();
        instantiate(c, vars, sig, &|_| true, &mut out, &mut seen);
    }
    out
}

/// Ground subterms of `clauses` whose sort is a pointer sort, grouped by sort,
/// together with `null`.
pub fn pointer_terms(clauses: &[Clause], sig: &Signature) -> BTreeMap<Sort, Vec<Term>> {
    let mut found: BTreeMap<Sort, BTreeMap<String, Term>> = BTreeMap::new();
    if let Some(null) = sig.get("null") {
        found.entry(null.range).or_default().insert("null".into(), Term::cons("null"));
    }
    for c in clauses {
        c.visit_terms(&mut |t| {
            if !t.is_ground() {
                return;
            }
            if let Some(sort) = term_sort(t, sig, &|_| None).filter(|s| s.is_pointer()) {
                let s = simplify_term(t);
                found.entry(sort).or_default().insert(crate::syntax::print::sort_key(&s), s);
            }
        });
    }
    found.into_iter().map(|(s, m)| (s, m.into_values().collect())).collect()
}

/// Pointer clauses range over all pointer terms; other clauses use the store.
pub fn compute_pointer_instances(k: &[Clause], g: &[Clause], store: &Store, level: u32, sig: &Signature) -> InstanceSet {
    let terms = pointer_terms(&k.iter().chain(g).cloned().collect::<Vec<_>>(), sig);
    let (pointer, other): (Vec<Clause>, Vec<Clause>) = k.iter().cloned().partition(|c| !c.vars.is_empty() && c.vars.iter().all(|v| v.sort.is_pointer()));
    let mut out = compute_instances(&other, store, level, sig);
    let mut seen: HashSet<Clause> = out.clauses.iter().cloned().collect();
    let informative = |c: &Clause| !c.consequent.iter().any(|a| matches!(a, Atom::Eq(l, r) if l == r));
    for c in &pointer {
        let vars = c.vars.iter().map(|v| (v.clone(), terms.get(&v.sort).cloned())).collect();
        instantiate(c, vars, sig, &informative, &mut out, &mut seen);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ground::extension_ground_terms;
    use crate::syntax::SymbolDecl;

    fn mono_sig() -> Signature {
        let mut sig = Signature::default();
        sig.add(SymbolDecl::ext("f", 1, 1, Sort::Int, Sort::Int)).unwrap();
        sig.add(SymbolDecl::ext("g", 1, 1, Sort::Int, Sort::Int)).unwrap();
        sig
    }

    fn mono(f: &str) -> Clause {
        let app = |x: &str| Term::app(f, vec![Term::var(x)]);
        Clause::new(
            vec![Var::new("x", Sort::Int), Var::new("y", Sort::Int)],
            vec![Atom::le(Term::var("x"), Term::var("y"))],
            vec![Atom::le(app("x"), app("y"))],
        )
        .with_level(&mono_sig())
    }

    #[test]
    fn monotonicity_instances_per_function() {
        let sig = mono_sig();
        let g = vec![
            Clause::unit(Atom::le(Term::app("f", vec![Term::cons("d1")]), Term::app("f", vec![Term::cons("c0")]))),
            Clause::unit(Atom::le(Term::app("g", vec![Term::cons("d2")]), Term::app("g", vec![Term::cons("c4")]))),
        ];
        let store = Store::new(&extension_ground_terms(&g, 1, &sig));
        let inst = compute_instances(&[mono("f"), mono("g")], &store, 1, &sig);
        assert!(inst.ground);
        assert_eq!(inst.clauses.len(), 8);
        assert_eq!(inst.clauses[0].to_string(), "c0 <= c0 ---> f(c0) <= f(c0)");
        assert_eq!(inst.clauses[1].to_string(), "d1 <= c0 ---> f(d1) <= f(c0)");
    }

    #[test]
    fn empty_k_has_no_instances() {
        let inst = compute_instances(&[], &Store::default(), 1, &mono_sig());
        assert!(inst.clauses.is_empty() && inst.ground);
    }

    #[test]
    fn array_product_law() {
        let sig = mono_sig();
        let c = Clause::new(vec![Var::new("i", Sort::Int)], vec![], vec![Atom::eq(Term::app("f", vec![Term::var("i")]), Term::Num(0))]);
        let terms: Vec<Term> = ["a", "b", "c", "d"].iter().map(|n| Term::cons(n)).collect();
        let index = BTreeMap::from([(Sort::Int, terms)]);
        assert_eq!(compute_array_instances(&[c], &index, &sig).clauses.len(), 4);
    }
}
