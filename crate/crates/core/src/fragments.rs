//! Syntactic recognition of local fragments.

use std::fmt;

use crate::preprocess::nullable_terms;
use crate::syntax::{ArithOp, Atom, Clause, Signature, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fragment {
    /// Array property fragment.
    Apf,
    /// Nullable pointer clauses.
    Pointer,
    /// Ground clauses are their own instances.
    Ground,
    /// Case-wise definition of a function; advisory only.
    DefinitionalCandidate,
    None,
}

impl Fragment {
    pub fn is_local(self) -> bool {
        matches!(self, Fragment::Apf | Fragment::Pointer | Fragment::Ground)
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::Apf => "APF",
            Fragment::Pointer => "pointer",
            Fragment::Ground => "ground",
            Fragment::DefinitionalCandidate => "definitional candidate",
            Fragment::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseReport {
    pub index: usize,
    pub fragment: Fragment,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentReport {
    pub per_clause: Vec<ClauseReport>,
    pub all_local: bool,
}

fn mentions_ext(t: &Term, sig: &Signature) -> bool {
    sig.term_level(t) > 0
}

fn is_linear(t: &Term) -> bool {
    match t {
        Term::Arith(ArithOp::Add | ArithOp::Sub, l, r) => is_linear(l) && is_linear(r),
        Term::Arith(ArithOp::Mul, l, r) => (matches!(**l, Term::Num(_)) || matches!(**r, Term::Num(_))) && is_linear(l) && is_linear(r),
        Term::Arith(ArithOp::Div, l, r) => matches!(**r, Term::Num(_)) && is_linear(l),
        Term::App(..) | Term::Read(..) => t.is_ground(),
        _ => true,
    }
}

/// Checks that variables in `t` occur only as direct arguments of extension terms.
fn value_term(t: &Term, sig: &Signature) -> Result<(), String> {
    match t {
        Term::Var(x) => Err(format!("universal variable {x} occurs outside an array read")),
        Term::App(f, args) if sig.is_ext(f) => {
            for a in args {
                if a.is_var() {
                    continue;
                }
                if !a.is_ground() {
                    return Err(format!("array read {} has a non-variable index", t));
                }
                if mentions_ext(a, sig) {
                    return Err(format!("nested array reads are not allowed: {t}"));
                }
            }
            Ok(())
        }
        Term::App(_, args) => args.iter().try_for_each(|a| value_term(a, sig)),
        Term::Arith(_, l, r) => {
            value_term(l, sig)?;
            value_term(r, sig)
        }
        Term::Read(..) => Err("array writes must be eliminated first".into()),
        _ => Ok(()),
    }
}

/// `∀x̄. φ_I → φ_V` with a positive linear index guard and variables only as direct reads.
pub fn check_array_property(c: &Clause, sig: &Signature) -> (bool, String) {
    if c.is_ground() {
        return (true, "ground".into());
    }
    if c.guard.is_some() {
        return (false, "augmented clause".into());
    }
    let check = || -> Result<(), String> {
        for (positive, a) in c.antecedent.iter().map(|a| (false, a)).chain(c.consequent.iter().map(|a| (true, a))) {
            let has_ext = a.terms().iter().any(|t| mentions_ext(t, sig));
            if has_ext {
                for t in a.terms() {
                    value_term(t, sig)?;
                }
                continue;
            }
            if a.is_ground() {
                continue;
            }
            if positive {
                return Err("index guards must be positive!".into());
            }
            match a {
                Atom::Pred(p, _) => return Err(format!("index guard uses relation {p}")),
                _ if a.terms().iter().all(|t| is_linear(t)) => {}
                _ => return Err(format!("index guard {a} is not linear")),
            }
        }
        Ok(())
    };
    match check() {
        Ok(()) => (true, "array property fragment".into()),
        Err(r) => (false, r),
    }
}

/// Every nested pointer argument `s` has its `s = null` disjunct.
pub fn check_nullable(c: &Clause, sig: &Signature) -> (bool, String) {
    if c.is_ground() {
        return (true, "ground".into());
    }
    if c.guard.is_some() {
        return (false, "augmented clause".into());
    }
    let null_sort = sig.get("null").map(|d| d.range);
    if let Some(v) = c.vars.iter().find(|v| Some(v.sort) != null_sort) {
        return (false, format!("variable {} is not a pointer", v.name));
    }
    let null = Term::cons("null");
    for s in nullable_terms(c, sig) {
        if !c.consequent.iter().any(|a| a.is_eq_between(&s, &null)) {
            return (false, format!("missing disjunct {s} = null"));
        }
    }
    (true, "nullable".into())
}

/// `φ(x̄) → f(x̄) = t` where only `f` has the clause's level.
pub fn is_definitional_candidate(c: &Clause, sig: &Signature) -> bool {
    let k = sig.clause_level(c);
    if k == 0 {
        return false;
    }
    let top = |t: &Term| sig.term_level(t) == k;
    let atom_top = |a: &Atom| a.terms().iter().any(|t| top(t));
    if c.antecedent.iter().any(atom_top) || c.guard.as_ref().is_some_and(|g| sig.formula_level(&g.phi) == k) {
        return false;
    }
    let heads: Vec<&Atom> = c.consequent.iter().filter(|a| atom_top(a)).collect();
    let [Atom::Eq(l, r)] = heads.as_slice() else { return false };
    let defines = |f: &Term, t: &Term| match f {
        Term::App(_, args) => {
            let mut seen = Vec::new();
            !top(t)
                && args.iter().all(|a| match a {
                    Term::Var(x) if !seen.contains(&x) => {
                        seen.push(x);
                        true
                    }
                    a => a.is_ground() && !top(a),
                })
        }
        _ => false,
    };
    defines(l, r) || defines(r, l)
}

/// Classifies the extension clauses among `clauses`.
pub fn analyze(clauses: &[Clause], sig: &Signature, array_mode: bool, pointer_mode: bool, asserted_local: bool) -> FragmentReport {
    let mut per_clause = Vec::new();
    for (index, c) in clauses.iter().enumerate() {
        if sig.clause_level(c) == 0 {
            continue;
        }
        let (fragment, reason) = if c.is_ground() {
            (Fragment::Ground, "ground".to_string())
        } else {
            let mut reasons = Vec::new();
            let mut found = None;
            if array_mode {
                let (ok, r) = check_array_property(c, sig);
                if ok {
                    found = Some((Fragment::Apf, r.clone()));
                }
                reasons.push(r);
            }
            if found.is_none() && pointer_mode {
                let (ok, r) = check_nullable(c, sig);
                if ok {
                    found = Some((Fragment::Pointer, r.clone()));
                }
                reasons.push(r);
            }
            match found {
                Some(f) => f,
                None if is_definitional_candidate(c, sig) => (Fragment::DefinitionalCandidate, "case-wise definition".into()),
                None if reasons.is_empty() => (Fragment::None, "no fragment applies".into()),
                None => (Fragment::None, reasons.join("; ")),
            }
        };
        per_clause.push(ClauseReport { index, fragment, reason });
    }
    let all_local = asserted_local || per_clause.iter().all(|r| r.fragment.is_local());
    FragmentReport { per_clause, all_local }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_task;
    use crate::preprocess::{add_nullable_premises, flatten, linearize};

    fn clauses(src: &str) -> (Vec<Clause>, Signature) {
        let task = parse_task(src).unwrap();
        (task.extension_axioms, task.signature)
    }

    const ARRAYS: &str = "Base_functions := {(+,2), (-,2)}\nExtension_functions := {(a, 1, 1), (b, 1, 1), (c, 1, 1)}\nRelations := {(<=, 2)}\n";

    #[test]
    fn sorted_array_clause_is_apf() {
        let (cs, sig) = clauses(&format!("{ARRAYS}Clauses := (FORALL i,j). _0 <= i, i <= j, j <= n - _1 --> c(i) <= c(j);"));
        assert_eq!(check_array_property(&cs[0], &sig), (true, "array property fragment".into()));
    }

    #[test]
    fn negative_guard_is_rejected() {
        let (cs, sig) = clauses(&format!("{ARRAYS}Clauses := (FORALL i). --> i = l, b(i) = c(i);"));
        assert_eq!(check_array_property(&cs[0], &sig), (false, "index guards must be positive!".into()));
    }

    #[test]
    fn nested_reads_are_rejected() {
        let (cs, sig) = clauses(&format!("{ARRAYS}Clauses := (FORALL i). _0 <= i --> a(b(i)) = _0;"));
        let (ok, reason) = check_array_property(&cs[0], &sig);
        assert!(!ok);
        assert!(reason.contains("nested") || reason.contains("non-variable"), "{reason}");
        let flat = linearize(&flatten(&cs, &sig), &sig);
        let (ok, reason) = check_array_property(&flat[0], &sig);
        assert!(!ok, "{reason}");
    }

    #[test]
    fn null_guards_make_pointer_clauses_local() {
        let src = "Extension_functions := {(next, 1, 1, pointer), (prev, 1, 1, pointer)}\n\
                   Clauses := (FORALL p). prev(next(p)) = p;";
        let (cs, sig) = clauses(src);
        assert!(!check_nullable(&cs[0], &sig).0);
        let guarded = add_nullable_premises(&cs, &sig);
        assert_eq!(check_nullable(&guarded[0], &sig), (true, "nullable".into()));
        let report = analyze(&guarded, &sig, false, true, false);
        assert!(report.all_local);
    }

    #[test]
    fn monotonicity_needs_an_assertion() {
        let src = "Extension_functions := {(f, 1, 1)}\nRelations := {(<=, 2)}\nClauses := (FORALL x,y). x <= y --> f(x) <= f(y);";
        let (cs, sig) = clauses(src);
        let report = analyze(&cs, &sig, false, false, false);
        assert_eq!(report.per_clause[0].fragment, Fragment::None);
        assert!(!report.all_local);
        assert!(analyze(&cs, &sig, false, false, true).all_local);
    }

    #[test]
    fn case_definitions_are_candidates() {
        let src = "Base_functions := {(+,2), (-,2)}\nExtension_functions := {(a', 1, 2), (a, 1, 1)}\nRelations := {(<=, 2), (<, 2)}\n\
                   Clauses := (FORALL i). x <= a(l), l < i, i <= u + _1 --> a'(i) = a(i - _1);";
        let (cs, sig) = clauses(src);
        assert!(is_definitional_candidate(&cs[0], &sig));
        let report = analyze(&cs, &sig, false, false, false);
        assert_eq!(report.per_clause[0].fragment, Fragment::DefinitionalCandidate);
        assert!(!report.all_local);
    }
}
