use std::collections::BTreeSet;

use super::{Atom, Formula, Signature, Term, Var};

/// Base formula attached to an augmented clause.
///
/// With `implies` set the clause reads `Φ → C`, otherwise `Φ ∨ C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Guard {
    pub phi: Formula,
    pub implies: bool,
}

impl Guard {
    /// The disjunct the guard contributes to the clause.
    pub fn as_disjunct(&self) -> Formula {
        if self.implies {
            Formula::not(self.phi.clone())
        } else {
            self.phi.clone()
        }
    }
}

/// A sorted clause `∀ vars. [Φ ∨] antecedent → consequent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub vars: Vec<Var>,
    pub guard: Option<Guard>,
    pub antecedent: Vec<Atom>,
    pub consequent: Vec<Atom>,
    pub level: u32,
}

impl Clause {
    pub fn new(vars: Vec<Var>, antecedent: Vec<Atom>, consequent: Vec<Atom>) -> Clause {
        Clause { vars, guard: None, antecedent, consequent, level: 0 }
    }

    pub fn ground(antecedent: Vec<Atom>, consequent: Vec<Atom>) -> Clause {
        Clause::new(Vec::new(), antecedent, consequent)
    }

    pub fn unit(a: Atom) -> Clause {
        Clause::ground(Vec::new(), vec![a])
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.antecedent.iter().chain(self.consequent.iter())
    }

    pub fn visit_terms<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        for a in self.atoms() {
            a.visit_terms(f);
        }
    }

    /// Rewrites the atoms and the guard with the same term map.
    pub fn map_terms(&self, f: &mut dyn FnMut(&Term) -> Term) -> Clause {
        Clause {
            vars: self.vars.clone(),
            guard: self.guard.as_ref().map(|g| Guard {
                phi: g.phi.map_atoms(&mut |a| a.map_terms(f)),
                implies: g.implies,
            }),
            antecedent: self.antecedent.iter().map(|a| a.map_terms(f)).collect(),
            consequent: self.consequent.iter().map(|a| a.map_terms(f)).collect(),
            level: self.level,
        }
    }

    /// Variables occurring free in atoms or guard.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in self.atoms() {
            a.vars_into(&mut out);
        }
        if let Some(g) = &self.guard {
            out.extend(g.phi.free_vars());
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.vars.is_empty() && self.free_vars().is_empty()
    }

    pub fn var_sort(&self, name: &str) -> Option<super::Sort> {
        self.vars.iter().find(|v| v.name == name).map(|v| v.sort)
    }

    /// Drops binders for variables that no longer occur.
    pub fn prune_vars(mut self) -> Clause {
        let used = self.free_vars();
        self.vars.retain(|v| used.contains(&v.name));
        self
    }

    pub fn with_level(mut self, sig: &Signature) -> Clause {
        self.level = sig.clause_level(&self);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.guard.is_none() && self.antecedent.is_empty() && self.consequent.is_empty()
    }
}
