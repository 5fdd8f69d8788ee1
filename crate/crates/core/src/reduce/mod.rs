//! Instantiation, purification and the level-by-level reduction loop.

mod chain;
mod congruence;
mod instances;
mod purify;

pub use chain::{reduce_chain, LevelTrace, ReduceOptions, Reduction};
pub use congruence::{congruence_count, congruence_instances};
pub use instances::{array_index_terms, compute_array_instances, compute_instances, compute_pointer_instances, pointer_terms, simplify_ext_args, InstanceSet, Store};
pub use purify::{purify, Definition, DefinitionMap, Purified};
