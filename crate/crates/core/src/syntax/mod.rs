//! Sorted first-order syntax shared by every stage.

mod clause;
mod formula;
pub mod ground;
pub mod print;
mod signature;
pub mod simplify;
mod sort;
pub mod subst;
mod task;
mod term;
pub mod typing;

pub use clause::{Clause, Guard};
pub use formula::{Formula, Var};
pub use signature::{Interval, Signature, SymbolDecl, SymbolKind};
pub use sort::Sort;
pub use task::Task;
pub use term::{ArithOp, ArrayTerm, Atom, Rel, Term};
