use crate::syntax::subst::{apply, Substitution};
use crate::syntax::{ArithOp, Atom, Clause, Term};

/// `x`, `x + k` or `x - k` for a bound variable `x`, solved for `x` against `t`.
fn solve(c: &Clause, side: &Term, t: &Term) -> Option<(String, Term)> {
    let bound = |x: &str| c.var_sort(x).is_some();
    match side {
        Term::Var(x) if bound(x) => Some((x.clone(), t.clone())),
        Term::Arith(op @ (ArithOp::Add | ArithOp::Sub), l, k) => match (&**l, &**k) {
            (Term::Var(x), Term::Num(k)) if bound(x) => {
                let back = if *op == ArithOp::Add { ArithOp::Sub } else { ArithOp::Add };
                Some((x.clone(), Term::arith(back, t.clone(), Term::Num(*k))))
            }
            _ => None,
        },
        _ => None,
    }
}

fn pseudo_equation(c: &Clause, a: &Atom) -> Option<(String, Term)> {
    let Atom::Eq(l, r) = a else { return None };
    if r.is_ground() {
        solve(c, l, r)
    } else if l.is_ground() {
        solve(c, r, l)
    } else {
        None
    }
}

/// Substitutes away antecedent equations `x = t` (or `x ± k = t`) with ground `t`, to a fixpoint.
pub fn unpseudofy_clause(c: &Clause) -> Clause {
    let mut c = c.clone();
    while let Some(k) = c.antecedent.iter().position(|a| pseudo_equation(&c, a).is_some()) {
        let (x, t) = pseudo_equation(&c, &c.antecedent[k]).unwrap();
        c.antecedent.remove(k);
        let sigma: Substitution = [(x, t)].into();
        c = apply(&c, &sigma).prune_vars();
    }
    c
}

pub fn unpseudofy(clauses: &[Clause]) -> Vec<Clause> {
    clauses.iter().map(unpseudofy_clause).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Sort, Var};

    #[test]
    fn pseudo_quantifier_disappears() {
        let c = Clause::new(
            vec![Var::new("i", Sort::Int)],
            vec![Atom::eq(Term::var("i"), Term::Num(3)), Atom::Pred("p".into(), vec![Term::var("i")])],
            vec![Atom::Pred("q".into(), vec![Term::var("i")])],
        );
        assert_eq!(unpseudofy_clause(&c).to_string(), "p[_3] ---> q[_3]");
    }

    #[test]
    fn other_variables_stay_bound() {
        let a = |x: Term| Term::app("a", vec![x]);
        let c = Clause::new(
            vec![Var::new("i", Sort::Int), Var::new("j", Sort::Int)],
            vec![Atom::eq(Term::var("i"), Term::cons("u"))],
            vec![Atom::eq(a(Term::var("i")), a(Term::var("j")))],
        );
        assert_eq!(unpseudofy_clause(&c).to_string(), "[j]  ---> a(u) = a(j)");
    }

    #[test]
    fn offsets_are_solved() {
        let c = Clause::new(
            vec![Var::new("i", Sort::Int)],
            vec![Atom::eq(Term::cons("m"), Term::plus(Term::var("i"), 1))],
            vec![Atom::eq(Term::app("a", vec![Term::var("i")]), Term::cons("x"))],
        );
        assert_eq!(unpseudofy_clause(&c).to_string(), " ---> a(-(m, _1)) = x");
    }

    #[test]
    fn chains_resolve_to_a_fixpoint() {
        let c = Clause::new(
            vec![Var::new("i", Sort::Int), Var::new("j", Sort::Int)],
            vec![Atom::eq(Term::var("j"), Term::plus(Term::var("i"), 1)), Atom::eq(Term::var("i"), Term::cons("u"))],
            vec![Atom::eq(Term::app("a", vec![Term::var("j")]), Term::cons("x"))],
        );
        assert_eq!(unpseudofy_clause(&c).to_string(), " ---> a(+(u, _1)) = x");
    }
}
