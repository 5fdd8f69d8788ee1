use crate::syntax::typing::term_sort;
use crate::syntax::{Atom, Clause, Signature, Term};

/// Non-ground pointer arguments of function applications in `c`, innermost first.
pub fn nullable_terms(c: &Clause, sig: &Signature) -> Vec<Term> {
    let Some(null) = sig.get("null") else { return Vec::new() };
    let null_sort = null.range;
    let mut out: Vec<Term> = Vec::new();
    let mut push = |t: &Term| {
        if !t.is_ground() && term_sort(t, sig, &|v| c.var_sort(v)) == Some(null_sort) && !out.contains(t) {
            out.push(t.clone());
        }
    };
    for a in c.atoms() {
        for t in a.terms() {
            post_order_args(t, &mut push);
        }
    }
    out
}

fn post_order_args(t: &Term, f: &mut dyn FnMut(&Term)) {
    match t {
        Term::App(_, args) => {
            for a in args {
                post_order_args(a, f);
                f(a);
            }
        }
        Term::Arith(_, l, r) => {
            post_order_args(l, f);
            post_order_args(r, f);
        }
        _ => {}
    }
}

/// Adds `s = null` to the consequent for every nullable argument `s` lacking one.
pub fn add_nullable_premises(clauses: &[Clause], sig: &Signature) -> Vec<Clause> {
    clauses
        .iter()
        .map(|c| {
            let missing: Vec<Atom> = nullable_terms(c, sig)
                .into_iter()
                .filter(|s| !c.consequent.iter().any(|a| a.is_eq_between(s, &Term::cons("null"))))
                .map(|s| Atom::eq(s, Term::cons("null")))
                .collect();
            if missing.is_empty() {
                return c.clone();
            }
            let mut out = c.clone();
            out.consequent = missing.into_iter().chain(c.consequent.iter().cloned()).collect();
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_task;

    fn pointers() -> crate::syntax::Task {
        parse_task(
            "Extension_functions := {(next, 1, 1, pointer), (prev, 1, 1, pointer), (priority, 1, 1, pointer, real)}\n\
             Relations := {(>=, 2)}\n\
             Clauses := (FORALL p). prev(next(p)) = p;\n\
                        (FORALL p). priority(p) >= priority(next(p));\n\
                        (FORALL p). --> p = null, next(p) = null, prev(next(p)) = p;\n\
             Query := priority(a) = _5;",
        )
        .unwrap()
    }

    #[test]
    fn nested_terms_gain_null_disjuncts() {
        let task = pointers();
        let out = add_nullable_premises(&task.extension_axioms, &task.signature);
        assert_eq!(out[0].to_string(), "[p]  ---> p = null, next(p) = null, prev(next(p)) = p");
        assert_eq!(out[1].to_string(), "[p]  ---> p = null, next(p) = null, priority(p) >= priority(next(p))");
        assert_eq!(out[2], task.extension_axioms[2]);
    }

    #[test]
    fn ground_clauses_are_untouched() {
        let task = pointers();
        assert_eq!(add_nullable_premises(&task.query, &task.signature), task.query);
    }
}
