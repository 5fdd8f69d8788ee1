//! The end-to-end run: parse, clausify, preprocess, classify, reduce, solve.

use std::time::{Duration, Instant};

use crate::clausifier::{Clausifier, ClausifyOptions};
use crate::error::Error;
use crate::fragments::{analyze, FragmentReport};
use crate::parser::{parse_task_with, ParseOptions};
use crate::preprocess::{
    add_nullable_premises, eliminate_writes, flatten, linearize, recalc_levels, settle_base_clauses, split_disequalities,
    unpseudofy, unshielded_vars,
};
use crate::reduce::{reduce_chain, ReduceOptions, Reduction};
use crate::syntax::{Sort, Task};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub flatten: bool,
    pub linearize: bool,
    pub flatten_query: bool,
    pub preprocess: bool,
    pub arrays: bool,
    pub min: bool,
    pub no_separation: bool,
    pub unpseudofy: bool,
    pub is_local: bool,
    pub real: bool,
    pub clausify: bool,
    pub rename: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            flatten: false,
            linearize: false,
            flatten_query: false,
            preprocess: false,
            arrays: false,
            min: false,
            no_separation: false,
            unpseudofy: false,
            is_local: false,
            real: false,
            clausify: true,
            rename: true,
        }
    }
}

/// A task after clausification and preprocessing, ready for reduction.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub task: Task,
    pub report: FragmentReport,
    pub array_mode: bool,
    pub pointer_mode: bool,
    pub warnings: Vec<String>,
    /// Clauses produced by clausification, for the trace.
    pub clausified: Vec<crate::syntax::Clause>,
    pub clausify_time: Duration,
}

impl Prepared {
    pub fn reduce_options(&self, opts: &Options) -> ReduceOptions {
        let flat = opts.flatten || opts.preprocess || self.array_mode;
        ReduceOptions {
            array_mode: self.array_mode,
            pointer_mode: self.pointer_mode,
            no_separation: opts.no_separation,
            flatten: flat,
            linearize: opts.linearize || opts.preprocess || self.array_mode,
            unpseudofy: opts.unpseudofy || self.task.signature.max_level() > 1,
            rename: opts.rename,
        }
    }
}

pub fn parse(text: &str, opts: &Options) -> Result<Task, Error> {
    let default_numeric = if opts.real { Sort::Real } else { Sort::Int };
    parse_task_with(text, &ParseOptions { default_numeric, ..ParseOptions::default() })
}

/// Clausifies formulas and runs the preprocessing passes selected by `opts`.
pub fn prepare(mut task: Task, opts: &Options) -> Result<Prepared, Error> {
    let array_mode = opts.arrays || opts.min || task.uses_writes();
    let pointer_mode = !task.signature.pointer_sorts().is_empty();
    let mut warnings = Vec::new();
    let started = Instant::now();
    let mut clausified = Vec::new();
    if !task.formulas.is_empty() || !task.ground_formulas.is_empty() {
        if !opts.clausify {
            return Err(Error::Unsupported("formulas given but clausification is disabled".into()));
        }
        let mut cl = Clausifier::new(task.signature.clone(), ClausifyOptions { rename: opts.rename });
        for f in std::mem::take(&mut task.formulas) {
            clausified.extend(cl.formula(&f, &[]));
        }
        for f in std::mem::take(&mut task.ground_formulas) {
            let cs = cl.formula(&f, &[]);
            if cs.iter().any(|c| !c.is_ground()) {
                return Err(Error::Unsupported(format!("ground formula {f} has quantifiers")));
            }
            clausified.extend(cs);
        }
        task.signature = cl.sig;
        for c in &clausified {
            if c.is_ground() {
                task.query.push(c.clone());
            } else if c.level == 0 {
                task.base_axioms.push(c.clone());
            } else {
                task.extension_axioms.push(c.clone());
            }
        }
    }
    let clausify_time = started.elapsed();
    if array_mode {
        eliminate_writes(&mut task)?;
    }
    let sig = task.signature.clone();
    if pointer_mode {
        task.extension_axioms = add_nullable_premises(&task.extension_axioms, &sig);
    }
    if array_mode {
        task.extension_axioms = split_disequalities(&task.extension_axioms, &sig);
    }
    recalc_levels(&mut task);
    settle_base_clauses(&mut task);
    let do_flatten = opts.flatten || opts.preprocess || array_mode;
    let do_linearize = opts.linearize || opts.preprocess || array_mode;
    if do_flatten {
        task.extension_axioms = flatten(&task.extension_axioms, &sig);
        if opts.flatten_query {
            task.query = flatten(&task.query, &sig);
        }
    }
    if do_linearize {
        task.extension_axioms = linearize(&task.extension_axioms, &sig);
    }
    if opts.unpseudofy || sig.max_level() > 1 {
        task.extension_axioms = unpseudofy(&task.extension_axioms);
    }
    recalc_levels(&mut task);
    settle_base_clauses(&mut task);
    for c in &task.extension_axioms {
        let loose = unshielded_vars(c, &sig);
        if !loose.is_empty() {
            warnings.push(format!("variables {} of clause {c} occur under no extension function", loose.join(", ")));
        }
    }
    if !sig.stable_levels.is_empty() {
        warnings.push("Stable levels are instantiated like ordinary levels".into());
    }
    let report = analyze(&task.extension_axioms, &sig, array_mode, pointer_mode, opts.is_local);
    Ok(Prepared { task, report, array_mode, pointer_mode, warnings, clausified, clausify_time })
}

pub fn reduce(prepared: &Prepared, opts: &Options) -> Reduction {
    reduce_chain(&prepared.task, &prepared.reduce_options(opts))
}
