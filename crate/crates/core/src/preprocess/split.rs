use crate::syntax::{Atom, Clause, Signature, Sort, Term};

/// Index equation `x = t` in a consequent, read as the guard `x ≠ t`.
fn guard_equation(c: &Clause, a: &Atom, sig: &Signature) -> Option<(Term, Term)> {
    let Atom::Eq(l, r) = a else { return None };
    let is_index_var = |t: &Term| matches!(t, Term::Var(v) if c.var_sort(v) == Some(Sort::Int));
    let base = |t: &Term| sig.term_level(t) == 0;
    if l == r || !base(l) || !base(r) {
        return None;
    }
    if is_index_var(l) && (r.is_ground() || r.is_var()) {
        Some((l.clone(), r.clone()))
    } else if is_index_var(r) && l.is_ground() {
        Some((r.clone(), l.clone()))
    } else {
        None
    }
}

/// Splits `x ≠ t` guards of integer index variables into `x ≤ t - 1` and `t + 1 ≤ x`.
pub fn split_disequalities(clauses: &[Clause], sig: &Signature) -> Vec<Clause> {
    let mut out = Vec::new();
    let mut todo: Vec<Clause> = clauses.iter().rev().cloned().collect();
    while let Some(c) = todo.pop() {
        if sig.clause_level(&c) == 0 {
            out.push(c);
            continue;
        }
        let hit = c.consequent.iter().enumerate().find_map(|(k, a)| guard_equation(&c, a, sig).map(|e| (k, e)));
        match hit {
            None => out.push(c),
            Some((k, (x, t))) => {
                let mut rest = c.clone();
                rest.consequent.remove(k);
                let mut below = rest.clone();
                below.antecedent.push(Atom::le(x.clone(), Term::minus(t.clone(), 1)));
                let mut above = rest;
                above.antecedent.push(Atom::le(Term::plus(t, 1), x));
                todo.push(above);
                todo.push(below);
            }
        }
    }
    out
}
