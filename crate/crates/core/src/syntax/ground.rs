use std::collections::BTreeMap;

use super::simplify::simplify_term;
use super::{Clause, Signature, Term};

fn extension_head(t: &Term, sig: &Signature) -> Option<u32> {
    match t {
        Term::App(f, _) if sig.is_ext(f) => Some(sig.level_of(f)),
        Term::Read(arr, _) if sig.is_ext(arr.root()) => Some(sig.level_of(arr.root())),
        _ => None,
    }
}

/// Ground subterms headed by an extension symbol of `level`, simplified, deduplicated
/// and sorted by printed form.
pub fn extension_ground_terms<'a>(clauses: impl IntoIterator<Item = &'a Clause>, level: u32, sig: &Signature) -> Vec<Term> {
    let mut found: BTreeMap<String, Term> = BTreeMap::new();
    let mut visit = |t: &Term| {
        if extension_head(t, sig) == Some(level) && t.is_ground() {
            let s = simplify_term(t);
            found.entry(s.to_string()).or_insert(s);
        }
    };
    for c in clauses {
        c.visit_terms(&mut |t| visit(t));
        if let Some(g) = &c.guard {
            g.phi.visit_atoms(&mut |a| a.visit_terms(&mut |t| visit(t)));
        }
    }
    found.into_values().collect()
}

/// Extension ground terms of any level, for trace output.
pub fn all_extension_ground_terms(c: &Clause, sig: &Signature) -> Vec<Term> {
    let mut found: BTreeMap<String, Term> = BTreeMap::new();
    c.visit_terms(&mut |t| {
        if extension_head(t, sig).is_some() && t.is_ground() {
            found.entry(t.to_string()).or_insert_with(|| t.clone());
        }
    });
    found.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Atom, Sort, SymbolDecl};

    #[test]
    fn terms_are_collected_by_level_and_simplified() {
        let mut sig = Signature::default();
        sig.add(SymbolDecl::ext("f", 1, 1, Sort::Int, Sort::Int)).unwrap();
        sig.add(SymbolDecl::ext("h", 1, 2, Sort::Int, Sort::Int)).unwrap();
        let u = Term::cons("u");
        let c = Clause::unit(Atom::le(
            Term::app("f", vec![Term::minus(Term::plus(u.clone(), 1), 1)]),
            Term::app("h", vec![Term::app("f", vec![u.clone()])]),
        ));
        let d = Clause::unit(Atom::eq(Term::app("f", vec![Term::cons("a")]), Term::Num(0)));
        let level1 = extension_ground_terms([&c, &d], 1, &sig);
        assert_eq!(level1, vec![Term::app("f", vec![Term::cons("a")]), Term::app("f", vec![u.clone()])]);
        assert_eq!(extension_ground_terms([&c], 2, &sig).len(), 1);
        assert!(extension_ground_terms(Vec::<&Clause>::new(), 1, &sig).is_empty());
    }
}
