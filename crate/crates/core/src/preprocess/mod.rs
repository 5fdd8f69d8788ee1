//! Passes that bring extension axioms into flat, linear, instantiable shape.

mod flatten;
mod nullable;
mod pseudo;
mod split;
mod writes;

pub use flatten::{flatten, flatten_clause, linearize, linearize_clause, unshielded_vars};
pub use nullable::{add_nullable_premises, nullable_terms};
pub use pseudo::{unpseudofy, unpseudofy_clause};
pub use split::split_disequalities;
pub use writes::eliminate_writes;

use crate::syntax::{Clause, Signature, Task};

/// Sets every clause level to the maximal level of its extension symbols.
pub fn recalc_levels(task: &mut Task) {
    let sig = &task.signature;
    for c in task.base_axioms.iter_mut().chain(task.extension_axioms.iter_mut()).chain(task.query.iter_mut()) {
        c.level = sig.clause_level(c);
    }
}

/// Moves level-0 clauses out of K and into the base axioms.
pub fn settle_base_clauses(task: &mut Task) {
    let (base, ext): (Vec<Clause>, Vec<Clause>) = std::mem::take(&mut task.extension_axioms).into_iter().partition(|c| c.level == 0);
    task.extension_axioms = ext;
    task.base_axioms.extend(base);
}

pub(crate) fn is_ext_app(t: &crate::syntax::Term, sig: &Signature) -> bool {
    matches!(t, crate::syntax::Term::App(f, _) if sig.is_ext(f))
}
