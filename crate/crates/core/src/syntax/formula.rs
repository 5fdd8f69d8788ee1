use std::collections::BTreeSet;

use super::{Atom, Sort};

/// A bound variable together with its sort.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: &str, sort: Sort) -> Var {
        Var { name: name.to_string(), sort }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<Var>, Box<Formula>),
    Exists(Vec<Var>, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(vars: Vec<Var>, body: Formula) -> Formula {
        Formula::Forall(vars, Box::new(body))
    }

    pub fn exists(vars: Vec<Var>, body: Formula) -> Formula {
        Formula::Exists(vars, Box::new(body))
    }

    pub fn visit_atoms<'a>(&'a self, f: &mut dyn FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(g) => g.visit_atoms(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.visit_atoms(f)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit_atoms(f),
        }
    }

    /// Rewrites every atom, leaving binders alone.
    pub fn map_atoms(&self, f: &mut dyn FnMut(&Atom) -> Atom) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(f(a)),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::Iff(a, b) => Formula::Iff(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
            Formula::Forall(vs, g) => Formula::forall(vs.clone(), g.map_atoms(f)),
            Formula::Exists(vs, g) => Formula::exists(vs.clone(), g.map_atoms(f)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                let mut vs = BTreeSet::new();
                a.vars_into(&mut vs);
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(g) => g.free_vars_into(bound, out),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.free_vars_into(bound, out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                let n = bound.len();
                bound.extend(vs.iter().map(|v| v.name.clone()));
                g.free_vars_into(bound, out);
                bound.truncate(n);
            }
        }
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Not(g) => g.has_quantifier(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().any(|g| g.has_quantifier()),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.has_quantifier() || b.has_quantifier(),
            Formula::Forall(..) | Formula::Exists(..) => true,
        }
    }
}
