//! Clause normal form: negation normal form, Skolemization, distribution and
//! optional structural renaming of subformulas.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::subst::{subst_term, Substitution};
use crate::syntax::{Atom, Clause, Formula, Signature, Sort, SymbolDecl, SymbolKind, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClausifyOptions {
    /// Replace subformulas by fresh predicates when distribution would copy them.
    pub rename: bool,
}

impl Default for ClausifyOptions {
    fn default() -> Self {
        ClausifyOptions { rename: true }
    }
}

type Lit = (bool, Atom);

/// Quantifier-free negation normal form over universally read variables.
#[derive(Clone, Debug)]
enum Nnf {
    Lit(Lit),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

/// Clausifies `fs`, returning the clauses and the signature extended by
/// Skolem symbols and renaming predicates.
pub fn clausify(fs: &[Formula], sig: &Signature, opts: &ClausifyOptions) -> (Vec<Clause>, Signature) {
    let mut c = Clausifier::new(sig.clone(), *opts);
    let out = fs.iter().flat_map(|f| c.formula(f, &[])).collect();
    (out, c.sig)
}

/// Stateful clausifier; fresh names stay unique across calls on the same value.
pub struct Clausifier {
    pub sig: Signature,
    opts: ClausifyOptions,
    next_var: usize,
    next_skolem: usize,
    next_pred: usize,
    var_sorts: BTreeMap<String, Sort>,
}

impl Clausifier {
    pub fn new(sig: Signature, opts: ClausifyOptions) -> Clausifier {
        Clausifier { sig, opts, next_var: 1, next_skolem: 1, next_pred: 1, var_sorts: BTreeMap::new() }
    }

    /// Clausifies one formula whose free variables are `free` (read universally).
    pub fn formula(&mut self, f: &Formula, free: &[Var]) -> Vec<Clause> {
        let mut scope = Vec::new();
        let mut sigma = Substitution::new();
        for v in free {
            let z = self.fresh_var(v.sort);
            sigma.insert(v.name.clone(), Term::Var(z.clone()));
            scope.push(z);
        }
        let nnf = self.nnf(f, true, &sigma, &scope);
        let mut out = Vec::new();
        for lits in self.cnf(&nnf, &mut out) {
            out.push(lits);
        }
        out.into_iter().map(|lits| self.clause(lits)).collect()
    }

    fn fresh_var(&mut self, sort: Sort) -> String {
        let name = self.sig.fresh_indexed("z_", self.next_var, &BTreeSet::new());
        self.next_var = name[2..].parse::<usize>().unwrap() + 1;
        self.var_sorts.insert(name.clone(), sort);
        name
    }

    fn skolem(&mut self, v: &Var, scope: &[String], body_free: &BTreeSet<String>) -> Term {
        let args: Vec<String> = scope.iter().filter(|z| body_free.contains(*z)).cloned().collect();
        let name = self.sig.fresh_indexed("sk_", self.next_skolem, &BTreeSet::new());
        self.next_skolem = name[3..].parse::<usize>().unwrap() + 1;
        if args.is_empty() {
            let _ = self.sig.add(SymbolDecl::constant(&name, v.sort).implicit());
            Term::Const(name)
        } else {
            let domain = self.var_sorts[&args[0]];
            let _ = self.sig.add(SymbolDecl::base(&name, args.len(), domain, v.sort));
            Term::App(name, args.into_iter().map(Term::Var).collect())
        }
    }

    fn nnf(&mut self, f: &Formula, pos: bool, sigma: &Substitution, scope: &[String]) -> Nnf {
        match f {
            Formula::Atom(a) => Nnf::Lit((pos, a.map_terms(&mut |t| subst_term(t, sigma)))),
            Formula::Not(g) => self.nnf(g, !pos, sigma, scope),
            Formula::And(gs) | Formula::Or(gs) => {
                let parts = gs.iter().map(|g| self.nnf(g, pos, sigma, scope)).collect();
                if matches!(f, Formula::And(_)) == pos { Nnf::And(parts) } else { Nnf::Or(parts) }
            }
            Formula::Implies(a, b) => {
                let na = self.nnf(a, !pos, sigma, scope);
                let nb = self.nnf(b, pos, sigma, scope);
                if pos { Nnf::Or(vec![na, nb]) } else { Nnf::And(vec![na, nb]) }
            }
            Formula::Iff(a, b) => {
                // (a -> b) and (b -> a), or its negation (a and not b) or (b and not a)
                let (a1, b1) = (self.nnf(a, !pos, sigma, scope), self.nnf(b, pos, sigma, scope));
                let (b2, a2) = (self.nnf(b, !pos, sigma, scope), self.nnf(a, pos, sigma, scope));
                if pos {
                    Nnf::And(vec![Nnf::Or(vec![a1, b1]), Nnf::Or(vec![b2, a2])])
                } else {
                    Nnf::Or(vec![Nnf::And(vec![a2, b2]), Nnf::And(vec![b1, a1])])
                }
            }
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                let universal = matches!(f, Formula::Forall(..)) == pos;
                let mut sigma = sigma.clone();
                let mut scope = scope.to_vec();
                if universal {
                    for v in vs {
                        let z = self.fresh_var(v.sort);
                        sigma.insert(v.name.clone(), Term::Var(z.clone()));
                        scope.push(z);
                    }
                } else {
                    let mut free = BTreeSet::new();
                    for v in g.free_vars() {
                        if let Some(Term::Var(z)) = sigma.get(&v) {
                            free.insert(z.clone());
                        }
                    }
                    for v in vs {
                        let sk = self.skolem(v, &scope, &free);
                        sigma.insert(v.name.clone(), sk);
                    }
                }
                self.nnf(g, pos, &sigma, &scope)
            }
        }
    }

    /// Clauses of `f`; definitions of renamed subformulas go to `defs`.
    fn cnf(&mut self, f: &Nnf, defs: &mut Vec<Vec<Lit>>) -> Vec<Vec<Lit>> {
        match f {
            Nnf::Lit(l) => vec![vec![l.clone()]],
            Nnf::And(gs) => gs.iter().flat_map(|g| self.cnf(g, defs)).collect(),
            Nnf::Or(gs) => {
                let mut single: Vec<Lit> = Vec::new();
                let mut multi: Vec<Vec<Vec<Lit>>> = Vec::new();
                for g in gs {
                    let cs = self.cnf(g, defs);
                    match cs.len() {
                        1 => single.extend(cs.into_iter().next().unwrap()),
                        _ => multi.push(cs),
                    }
                }
                if self.opts.rename && multi.len() > 1 {
                    let keep = multi.iter().position(|cs| !self.renamable(cs)).unwrap_or(0);
                    let mut kept = Vec::new();
                    for (k, cs) in multi.into_iter().enumerate() {
                        if k == keep || !self.renamable(&cs) {
                            kept.push(cs);
                            continue;
                        }
                        let p = self.rename(&cs);
                        defs.extend(cs.into_iter().map(|mut c| {
                            c.push((false, p.clone()));
                            c
                        }));
                        single.push((true, p));
                    }
                    multi = kept;
                }
                let mut out: Vec<Vec<Lit>> = vec![Vec::new()];
                for cs in multi {
                    out = out
                        .iter()
                        .flat_map(|prefix| cs.iter().map(move |c| prefix.iter().chain(c).cloned().collect()))
                        .collect();
                }
                for c in &mut out {
                    c.extend(single.iter().cloned());
                }
                out
            }
        }
    }

    fn free_vars(cs: &[Vec<Lit>]) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        for (_, a) in cs.iter().flatten() {
            a.vars_into(&mut vars);
        }
        vars
    }

    /// Renaming needs an extension-free subformula over variables of one sort.
    fn renamable(&self, cs: &[Vec<Lit>]) -> bool {
        let ext = cs.iter().flatten().any(|(_, a)| a.terms().iter().any(|t| self.sig.term_level(t) > 0));
        let sorts: BTreeSet<Sort> = Self::free_vars(cs).iter().map(|v| self.var_sorts[v]).collect();
        !ext && sorts.len() <= 1
    }

    /// Fresh predicate over the free variables of `cs`.
    fn rename(&mut self, cs: &[Vec<Lit>]) -> Atom {
        let vars = Self::free_vars(cs);
        let name = self.sig.fresh_indexed("ren_", self.next_pred, &BTreeSet::new());
        self.next_pred = name[4..].parse::<usize>().unwrap() + 1;
        let domain = vars.iter().next().map(|v| self.var_sorts[v]).unwrap_or(self.sig.default_numeric);
        self.sig.add(SymbolDecl::relation(&name, vars.len(), domain)).expect("fresh name");
        Atom::Pred(name, vars.into_iter().map(Term::Var).collect())
    }

    fn clause(&self, lits: Vec<Lit>) -> Clause {
        let (mut ante, mut cons) = (Vec::new(), Vec::new());
        for (pos, a) in lits {
            let side = if pos { &mut cons } else { &mut ante };
            if !side.contains(&a) {
                side.push(a);
            }
        }
        let mut c = Clause::new(Vec::new(), ante, cons);
        let free = c.free_vars();
        let mut names: Vec<&String> = free.iter().collect();
        names.sort_by_key(|n| n[2..].parse::<usize>().unwrap_or(usize::MAX));
        c.vars = names.into_iter().map(|n| Var { name: n.clone(), sort: self.var_sorts[n] }).collect();
        c.with_level(&self.sig)
    }
}

/// True when `name` was introduced by the clausifier as a renaming predicate.
pub fn is_renaming_predicate(sig: &Signature, name: &str) -> bool {
    name.starts_with("ren_") && matches!(sig.get(name), Some(d) if d.kind == SymbolKind::Relation)
}
