use super::{Clause, Formula, Signature};

/// A parsed proof task.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Task {
    pub signature: Signature,
    /// `Base` section.
    pub base_axioms: Vec<Clause>,
    /// `Clauses` section; levels are recalculated, so some may be base clauses.
    pub extension_axioms: Vec<Clause>,
    /// `Formulas` section, before clausification.
    pub formulas: Vec<Formula>,
    /// `Ground_Formulas` section, clausified into the query.
    pub ground_formulas: Vec<Formula>,
    pub query: Vec<Clause>,
}

impl Task {
    pub fn uses_writes(&self) -> bool {
        let mut found = false;
        let clauses = self.base_axioms.iter().chain(&self.extension_axioms).chain(&self.query);
        for c in clauses {
            c.visit_terms(&mut |t| found |= matches!(t, super::Term::Read(..)));
        }
        for f in self.formulas.iter().chain(&self.ground_formulas) {
            f.visit_atoms(&mut |a| {
                for t in a.terms() {
                    found |= t.contains_write();
                }
            });
        }
        found
    }

    pub fn all_clauses(&self) -> impl Iterator<Item = &Clause> {
        self.base_axioms.iter().chain(&self.extension_axioms).chain(&self.query)
    }
}
