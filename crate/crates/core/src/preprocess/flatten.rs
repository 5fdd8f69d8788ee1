use std::collections::{BTreeMap, BTreeSet};

use super::is_ext_app;
use crate::syntax::typing::term_sort;
use crate::syntax::{Atom, Clause, Signature, Term, Var};

fn taken_names(c: &Clause) -> BTreeSet<String> {
    let mut taken = c.free_vars();
    taken.extend(c.vars.iter().map(|v| v.name.clone()));
    taken
}

fn map_atoms(c: &Clause, f: &mut dyn FnMut(&Term) -> Term) -> (Vec<Atom>, Vec<Atom>) {
    let ante = c.antecedent.iter().map(|a| a.map_terms(f)).collect();
    let cons = c.consequent.iter().map(|a| a.map_terms(f)).collect();
    (ante, cons)
}

/// Replaces non-variable, non-ground arguments of extension functions by fresh
/// variables `j, j1, ...` defined in the antecedent.
pub fn flatten_clause(c: &Clause, sig: &Signature) -> Clause {
    let mut taken = taken_names(c);
    let mut defs: Vec<(Term, Var)> = Vec::new();
    let (ante, cons) = map_atoms(c, &mut |t| {
        t.map_bottom_up(&mut |t| match t {
            Term::App(f, args) if sig.is_ext(&f) => {
                let args = args
                    .into_iter()
                    .map(|a| {
                        if a.is_var() || a.is_ground() {
                            return a;
                        }
                        if let Some((_, v)) = defs.iter().find(|(d, _)| *d == a) {
                            return Term::Var(v.name.clone());
                        }
                        let name = sig.fresh_name("j", &taken);
                        taken.insert(name.clone());
                        let sort = term_sort(&a, sig, &|x| {
                            c.var_sort(x).or_else(|| defs.iter().find(|(_, v)| v.name == x).map(|(_, v)| v.sort))
                        })
                        .unwrap_or(sig.default_numeric);
                        defs.push((a, Var { name: name.clone(), sort }));
                        Term::Var(name)
                    })
                    .collect();
                Term::App(f, args)
            }
            t => t,
        })
    });
    if defs.is_empty() {
        return c.clone();
    }
    let mut out = c.clone();
    out.vars.extend(defs.iter().map(|(_, v)| v.clone()));
    out.antecedent = defs.into_iter().map(|(t, v)| Atom::eq(Term::Var(v.name), t)).chain(ante).collect();
    out.consequent = cons;
    out
}

pub fn flatten(clauses: &[Clause], sig: &Signature) -> Vec<Clause> {
    clauses.iter().map(|c| flatten_clause(c, sig)).collect()
}

/// Gives every variable occurrence in a distinct extension term (or argument
/// position) its own copy `x_k`, linked by `x_k = x` in the antecedent.
pub fn linearize_clause(c: &Clause, sig: &Signature) -> Clause {
    let mut taken = taken_names(c);
    let mut owner: BTreeMap<String, (Term, usize)> = BTreeMap::new();
    let mut copies: BTreeMap<(String, Term, usize), String> = BTreeMap::new();
    let mut links: Vec<(Var, String)> = Vec::new();
    let mut next = 1;
    let (ante, cons) = map_atoms(c, &mut |t| {
        t.map_bottom_up(&mut |t| match t {
            Term::App(f, args) if sig.is_ext(&f) => {
                let whole = Term::App(f.clone(), args.clone());
                let args = args
                    .into_iter()
                    .enumerate()
                    .map(|(pos, a)| {
                        let Term::Var(x) = &a else { return a };
                        let here = (whole.clone(), pos);
                        match owner.get(x) {
                            None => {
                                owner.insert(x.clone(), here);
                                a
                            }
                            Some(o) if *o == here => a,
                            Some(_) => {
                                let key = (x.clone(), whole.clone(), pos);
                                if let Some(n) = copies.get(&key) {
                                    return Term::Var(n.clone());
                                }
                                let name = sig.fresh_indexed("x_", next, &taken);
                                next = name[2..].parse::<usize>().unwrap_or(next) + 1;
                                taken.insert(name.clone());
                                let sort = c.var_sort(x).unwrap_or(sig.default_numeric);
                                links.push((Var { name: name.clone(), sort }, x.clone()));
                                copies.insert(key, name.clone());
                                Term::Var(name)
                            }
                        }
                    })
                    .collect();
                Term::App(f, args)
            }
            t => t,
        })
    });
    if links.is_empty() {
        return c.clone();
    }
    let mut out = c.clone();
    out.vars.extend(links.iter().map(|(v, _)| v.clone()));
    out.antecedent = links.into_iter().map(|(v, x)| Atom::eq(Term::Var(v.name), Term::Var(x))).chain(ante).collect();
    out.consequent = cons;
    out
}

pub fn linearize(clauses: &[Clause], sig: &Signature) -> Vec<Clause> {
    clauses.iter().map(|c| linearize_clause(c, sig)).collect()
}

/// Bound variables that never occur as a direct argument of an extension term.
pub fn unshielded_vars(c: &Clause, sig: &Signature) -> Vec<String> {
    let mut shielded = BTreeSet::new();
    c.visit_terms(&mut |t| {
        if is_ext_app(t, sig) {
            for a in t.args() {
                if let Term::Var(x) = a {
                    shielded.insert(x.clone());
                }
            }
        }
    });
    c.vars.iter().filter(|v| !shielded.contains(&v.name)).map(|v| v.name.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Sort, SymbolDecl};

    fn sig() -> Signature {
        let mut sig = Signature::default();
        for (f, l) in [("a", 1), ("b", 1), ("a_w1", 1), ("a'", 2), ("next", 1), ("prev", 1)] {
            sig.add(SymbolDecl::ext(f, 1, l, Sort::Int, Sort::Int)).unwrap();
        }
        sig
    }

    fn app(f: &str, t: Term) -> Term {
        Term::app(f, vec![t])
    }

    #[test]
    fn shifted_argument_gets_a_variable() {
        let i = Term::var("i");
        let c = Clause::new(
            vec![Var::new("i", Sort::Int)],
            vec![Atom::eq(i.clone(), Term::cons("u")), Atom::le(app("a", i.clone()), Term::cons("x"))],
            vec![Atom::le(Term::cons("x"), app("a", Term::cons("l"))), Atom::eq(app("a'", Term::plus(i, 1)), Term::cons("x"))],
        );
        let f = flatten_clause(&c, &sig());
        assert_eq!(f.to_string(), "[i, j] j = +(i, _1), i = u, a(i) <= x ---> x <= a(l), a'(j) = x");
        assert_eq!(flatten_clause(&f, &sig()), f);
    }

    #[test]
    fn nested_pointer_terms() {
        let p = Term::var("p");
        let c = Clause::new(vec![Var::new("p", Sort::Int)], vec![], vec![Atom::eq(app("prev", app("next", p.clone())), p)]);
        assert_eq!(flatten_clause(&c, &sig()).to_string(), "[p, j] j = next(p) ---> prev(j) = p");
    }

    #[test]
    fn linearization_matches_the_trace() {
        let z = Term::var("z_1");
        let c = Clause::new(
            vec![Var::new("z_1", Sort::Int)],
            vec![Atom::le(Term::cons("l"), z.clone()), Atom::le(z.clone(), Term::cons("u"))],
            vec![Atom::eq(app("a", z.clone()), app("b", z))],
        );
        let l = linearize_clause(&c, &sig());
        assert_eq!(l.to_string(), "[z_1, x_1] x_1 = z_1, l <= z_1, z_1 <= u ---> a(z_1) = b(x_1)");
        assert_eq!(linearize_clause(&l, &sig()), l);
    }

    #[test]
    fn repeated_identical_terms_share_the_variable() {
        let i = Term::var("i");
        let c = Clause::new(
            vec![Var::new("i", Sort::Int)],
            vec![Atom::le(app("a", i.clone()), Term::cons("x"))],
            vec![Atom::le(Term::cons("x"), app("a", i))],
        );
        assert_eq!(linearize_clause(&c, &sig()), c);
    }

    #[test]
    fn unshielded_variables_are_reported() {
        let c = Clause::new(
            vec![Var::new("i", Sort::Int), Var::new("k", Sort::Int)],
            vec![Atom::le(Term::var("k"), Term::var("i"))],
            vec![Atom::eq(app("a", Term::var("i")), Term::Num(0))],
        );
        assert_eq!(unshielded_vars(&c, &sig()), vec!["k".to_string()]);
    }
}
