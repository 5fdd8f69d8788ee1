use std::collections::{BTreeMap, BTreeSet};

use super::typing::term_sort;
use super::{Clause, Formula, Guard, Signature, Term, Var};
use crate::error::Error;

pub type Substitution = BTreeMap<String, Term>;

/// Replaces free occurrences of variables simultaneously.
pub fn subst_term(t: &Term, sigma: &Substitution) -> Term {
    if sigma.is_empty() {
        return t.clone();
    }
    t.map_bottom_up(&mut |t| match t {
        Term::Var(v) => sigma.get(&v).cloned().unwrap_or(Term::Var(v)),
        t => t,
    })
}

/// Capture-avoiding substitution inside a formula.
pub fn subst_formula(f: &Formula, sigma: &Substitution) -> Formula {
    if sigma.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Atom(a) => Formula::Atom(a.map_terms(&mut |t| subst_term(t, sigma))),
        Formula::Not(g) => Formula::not(subst_formula(g, sigma)),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| subst_formula(g, sigma)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| subst_formula(g, sigma)).collect()),
        Formula::Implies(a, b) => Formula::implies(subst_formula(a, sigma), subst_formula(b, sigma)),
        Formula::Iff(a, b) => Formula::Iff(Box::new(subst_formula(a, sigma)), Box::new(subst_formula(b, sigma))),
        Formula::Forall(vs, g) => {
            let (vs, g) = subst_binder(vs, g, sigma);
            Formula::forall(vs, g)
        }
        Formula::Exists(vs, g) => {
            let (vs, g) = subst_binder(vs, g, sigma);
            Formula::exists(vs, g)
        }
    }
}

fn subst_binder(vs: &[Var], body: &Formula, sigma: &Substitution) -> (Vec<Var>, Formula) {
    let mut inner: Substitution = sigma.iter().filter(|(k, _)| !vs.iter().any(|v| &v.name == *k)).map(|(k, t)| (k.clone(), t.clone())).collect();
    let mut range_vars = BTreeSet::new();
    for t in inner.values() {
        t.vars_into(&mut range_vars);
    }
    let mut taken: BTreeSet<String> = range_vars.clone();
    taken.extend(body.free_vars());
    let mut out = Vec::new();
    for v in vs {
        if range_vars.contains(&v.name) {
            let fresh = (1..).map(|k| format!("{}_{k}", v.name)).find(|n| !taken.contains(n)).unwrap();
            taken.insert(fresh.clone());
            inner.insert(v.name.clone(), Term::Var(fresh.clone()));
            out.push(Var { name: fresh, sort: v.sort });
        } else {
            out.push(v.clone());
        }
    }
    (out, subst_formula(body, &inner))
}

/// Applies `sigma` to a clause.
///
/// Bound variables in the domain of `sigma` are dropped from the binder list and
/// variables introduced by the range are appended.
pub fn substitute(c: &Clause, sigma: &Substitution, sig: &Signature) -> Result<Clause, Error> {
    if sigma.is_empty() {
        return Ok(c.clone());
    }
    let var_sort = |v: &str| c.var_sort(v);
    for (x, t) in sigma {
        if let Some(expected) = c.var_sort(x) {
            if let Some(found) = term_sort(t, sig, &var_sort) {
                if found != expected {
                    return Err(Error::SortMismatch { var: x.clone(), expected, found });
                }
            }
        }
    }
    Ok(apply(c, sigma))
}

/// [`substitute`] without the sort check.
pub fn apply(c: &Clause, sigma: &Substitution) -> Clause {
    let mut vars: Vec<Var> = c.vars.iter().filter(|v| !sigma.contains_key(&v.name)).cloned().collect();
    for v in &c.vars {
        if let Some(t) = sigma.get(&v.name) {
            let mut introduced = BTreeSet::new();
            t.vars_into(&mut introduced);
            for n in introduced {
                if !vars.iter().any(|w| w.name == n) {
                    vars.push(Var { name: n, sort: v.sort });
                }
            }
        }
    }
    let mut out = Clause {
        vars,
        guard: c.guard.as_ref().map(|g| Guard { phi: subst_formula(&g.phi, sigma), implies: g.implies }),
        antecedent: c.antecedent.iter().map(|a| a.map_terms(&mut |t| subst_term(t, sigma))).collect(),
        consequent: c.consequent.iter().map(|a| a.map_terms(&mut |t| subst_term(t, sigma))).collect(),
        level: c.level,
    };
    out.vars.dedup_by(|a, b| a.name == b.name);
    out
}
