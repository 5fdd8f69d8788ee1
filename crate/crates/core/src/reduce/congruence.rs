use super::purify::DefinitionMap;
use crate::syntax::{Atom, Clause, Term};

/// `t̄ = s̄ → e_i = e_j` for every pair of definitions sharing a head symbol.
pub fn congruence_instances(d: &DefinitionMap) -> Vec<Clause> {
    let mut out = Vec::new();
    for (_, defs) in d.by_symbol() {
        for (i, di) in defs.iter().enumerate() {
            for dj in &defs[i + 1..] {
                let ante = di.term.args().iter().zip(dj.term.args()).map(|(s, t)| Atom::eq(s.clone(), t.clone())).collect();
                out.push(Clause::ground(ante, vec![Atom::eq(Term::cons(&di.name), Term::cons(&dj.name))]));
            }
        }
    }
    out
}

/// Σ_f k_f (k_f − 1) / 2.
pub fn congruence_count(d: &DefinitionMap) -> usize {
    d.by_symbol().iter().map(|(_, ds)| ds.len() * ds.len().saturating_sub(1) / 2).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::purify::Definition;

    fn def(name: &str, f: &str, args: &[&str]) -> Definition {
        Definition { name: name.into(), term: Term::app(f, args.iter().map(|a| Term::cons(a)).collect()) }
    }

    #[test]
    fn pairs_per_symbol() {
        let d = DefinitionMap {
            level: 1,
            entries: vec![def("e_1", "f", &["a"]), def("e_2", "g", &["a", "b"]), def("e_3", "f", &["b"]), def("e_4", "g", &["b", "c"])],
        };
        let shown: Vec<String> = congruence_instances(&d).iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["a = b ---> e_1 = e_3", "a = b, b = c ---> e_2 = e_4"]);
        assert_eq!(congruence_count(&d), 2);
    }

    #[test]
    fn golden_count() {
        let entries = (1..=15)
            .map(|k| def(&format!("e_{k}"), ["a", "a_w1", "b"][(k - 1) / 5], &[&format!("t{k}")]))
            .collect();
        let d = DefinitionMap { level: 1, entries };
        assert_eq!(congruence_count(&d), 30);
        assert_eq!(congruence_instances(&d).len(), 30);
    }
}
