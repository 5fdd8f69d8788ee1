use super::{ArithOp, Atom, Clause, Term};
use crate::error::Error;

/// Folds numerals and collapses `t + k1 - k2` into `t + (k1 - k2)`.
pub fn simplify_ground_arith(t: &Term) -> Result<Term, Error> {
    let mut err = None;
    let out = t.map_bottom_up(&mut |t| match t {
        Term::Arith(op, l, r) => match fold(op, *l, *r) {
            Ok(t) => t,
            Err(e) => {
                err = Some(e);
                Term::Num(0)
            }
        },
        t => t,
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Like [`simplify_ground_arith`] but keeps the input unchanged when folding fails.
pub fn simplify_term(t: &Term) -> Term {
    simplify_ground_arith(t).unwrap_or_else(|_| t.clone())
}

pub fn simplify_atom(a: &Atom) -> Atom {
    a.map_terms(&mut simplify_term)
}

pub fn simplify_clause(c: &Clause) -> Clause {
    c.map_terms(&mut simplify_term)
}

fn fold(op: ArithOp, l: Term, r: Term) -> Result<Term, Error> {
    if let (Term::Num(a), Term::Num(b)) = (&l, &r) {
        if op == ArithOp::Div && *b == 0 {
            return Err(Error::DivisionByZero);
        }
        return Ok(op.apply(*a, *b).map(Term::Num).unwrap_or(Term::arith(op, l, r)));
    }
    if op == ArithOp::Div && r == Term::Num(0) {
        return Err(Error::DivisionByZero);
    }
    let sign = match op {
        ArithOp::Add => 1,
        ArithOp::Sub => -1,
        _ => return Ok(Term::arith(op, l, r)),
    };
    let (lc, lk) = split_offset(&l);
    let (rc, rk) = split_offset(&r);
    let k = rk.checked_mul(sign).and_then(|rk| lk.checked_add(rk));
    match (lc, rc, k) {
        (Some(core), None, Some(k)) => Ok(rebuild(core.clone(), k)),
        (None, Some(core), Some(k)) if sign == 1 => Ok(rebuild(core.clone(), k)),
        _ => Ok(Term::arith(op, l, r)),
    }
}

/// Splits `core ± k` into its core and signed offset; a numeral has no core.
fn split_offset(t: &Term) -> (Option<&Term>, i64) {
    match t {
        Term::Num(k) => (None, *k),
        Term::Arith(ArithOp::Add, c, k) => match **k {
            Term::Num(k) => (Some(c), k),
            _ => (Some(t), 0),
        },
        Term::Arith(ArithOp::Sub, c, k) => match **k {
            Term::Num(k) => (Some(c), -k),
            _ => (Some(t), 0),
        },
        _ => (Some(t), 0),
    }
}

fn rebuild(core: Term, k: i64) -> Term {
    match k {
        0 => core,
        k if k > 0 => Term::plus(core, k),
        k if k != i64::MIN => Term::minus(core, -k),
        k => Term::plus(core, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Term {
        Term::cons("u")
    }

    #[test]
    fn offsets_cancel() {
        assert_eq!(simplify_ground_arith(&Term::minus(Term::plus(u(), 1), 1)).unwrap(), u());
        assert_eq!(simplify_ground_arith(&Term::plus(Term::plus(u(), 1), 1)).unwrap(), Term::plus(u(), 2));
        assert_eq!(simplify_ground_arith(&Term::minus(Term::plus(u(), 1), 3)).unwrap(), Term::minus(u(), 2));
        assert_eq!(simplify_ground_arith(&Term::Num(3)).unwrap(), Term::Num(3));
    }

    #[test]
    fn numerals_fold_and_move_right() {
        let t = Term::arith(ArithOp::Add, Term::Num(2), Term::plus(u(), 1));
        assert_eq!(simplify_ground_arith(&t).unwrap(), Term::plus(u(), 3));
        let t = Term::arith(ArithOp::Add, Term::Num(0), Term::Num(1));
        assert_eq!(simplify_ground_arith(&t).unwrap(), Term::Num(1));
    }

    #[test]
    fn simplification_reaches_inside_applications() {
        let t = Term::app("a", vec![Term::minus(Term::plus(u(), 1), 1)]);
        assert_eq!(simplify_ground_arith(&t).unwrap(), Term::app("a", vec![u()]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let t = Term::arith(ArithOp::Div, u(), Term::Num(0));
        assert!(matches!(simplify_ground_arith(&t), Err(Error::DivisionByZero)));
        assert_eq!(simplify_term(&t), t);
    }

    #[test]
    fn unrelated_cores_are_left_alone() {
        let t = Term::arith(ArithOp::Sub, Term::Num(5), u());
        assert_eq!(simplify_ground_arith(&t).unwrap(), t);
        let t = Term::arith(ArithOp::Add, u(), Term::cons("v"));
        assert_eq!(simplify_ground_arith(&t).unwrap(), t);
    }
}
