use super::congruence::congruence_instances;
use super::instances::{array_index_terms, compute_array_instances, compute_instances, compute_pointer_instances, simplify_ext_args, Store};
use super::purify::{purify, DefinitionMap};
use crate::clausifier::{Clausifier, ClausifyOptions};
use crate::preprocess::{flatten, linearize, unpseudofy, unpseudofy_clause};
use crate::syntax::ground::extension_ground_terms;
use crate::syntax::{Clause, Formula, Signature, Task, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Instantiate index variables with all index terms.
    pub array_mode: bool,
    /// Pointer variables range over all ground pointer terms.
    pub pointer_mode: bool,
    /// Stop after computing the instances of the top level.
    pub no_separation: bool,
    pub flatten: bool,
    pub linearize: bool,
    pub unpseudofy: bool,
    /// Renaming during clausification of instantiated guards.
    pub rename: bool,
}

/// What happened on one level of the loop.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LevelTrace {
    pub level: u32,
    pub k: Vec<Clause>,
    /// Store terms, or index terms in array mode.
    pub terms: Vec<Term>,
    pub instances: Vec<Clause>,
    pub definitions: DefinitionMap,
    pub purified: Vec<Clause>,
    pub congruence: Vec<Clause>,
    /// Non-ground clauses handed down to lower levels.
    pub lowered: Vec<Clause>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub signature: Signature,
    pub base: Vec<Clause>,
    /// The query after the last completed level.
    pub query: Vec<Clause>,
    /// Extension clauses not yet processed; empty unless the loop stopped early.
    pub remaining: Vec<Clause>,
    pub levels: Vec<LevelTrace>,
    /// All instances were ground.
    pub ground: bool,
    pub abort: Option<String>,
    /// False when the loop stopped before purification.
    pub separated: bool,
}

impl Reduction {
    /// The clause set handed to the base prover.
    pub fn level0(&self) -> Vec<Clause> {
        self.base.iter().chain(&self.query).cloned().collect()
    }

    pub fn total(&self) -> usize {
        self.base.len() + self.query.len()
    }

    /// Definition maps from the lowest level up.
    pub fn definitions(&self) -> impl Iterator<Item = &DefinitionMap> {
        self.levels.iter().rev().map(|l| &l.definitions)
    }
}

fn prepare(cs: Vec<Clause>, sig: &Signature, opts: &ReduceOptions) -> Vec<Clause> {
    let mut cs = cs;
    if opts.flatten {
        cs = flatten(&cs, sig);
    }
    if opts.linearize {
        cs = linearize(&cs, sig);
    }
    if opts.unpseudofy {
        cs = unpseudofy(&cs);
    }
    cs.into_iter().map(|c| c.with_level(sig)).collect()
}

/// Clausifies an instance carrying a guard formula.
fn expand_guard(c: Clause, sig: &mut Signature, opts: &ReduceOptions) -> Vec<Clause> {
    let Some(g) = &c.guard else { return vec![c] };
    let mut parts = vec![g.as_disjunct()];
    parts.extend(c.antecedent.iter().map(|a| Formula::not(Formula::atom(a.clone()))));
    parts.extend(c.consequent.iter().map(|a| Formula::atom(a.clone())));
    let mut cl = Clausifier::new(sig.clone(), ClausifyOptions { rename: opts.rename });
    let out = cl.formula(&Formula::Or(parts), &c.vars);
    *sig = cl.sig;
    out.into_iter().map(|d| simplify_ext_args(&d, sig).with_level(sig)).collect()
}

/// Runs the reduction from the highest level down to the base theory.
pub fn reduce_chain(task: &Task, opts: &ReduceOptions) -> Reduction {
    let mut sig = task.signature.clone();
    let mut base = task.base_axioms.clone();
    let mut k: Vec<Clause> = task.extension_axioms.iter().map(|c| c.clone().with_level(&sig)).collect();
    let mut g = task.query.clone();
    let mut levels = Vec::new();
    let mut ground = true;
    let mut next_e = 1;
    for i in (1..=sig.max_level()).rev() {
        let (ki, rest): (Vec<Clause>, Vec<Clause>) = k.into_iter().partition(|c| c.level == i);
        let (terms, inst) = if opts.array_mode {
            let index = array_index_terms(&ki, &g, i, &sig);
            let inst = compute_array_instances(&ki, &index, &sig);
            (index.into_values().flatten().collect(), inst)
        } else {
            let terms = extension_ground_terms(ki.iter().chain(&g), i, &sig);
            let store = Store::new(&terms);
            let inst = if opts.pointer_mode {
                compute_pointer_instances(&ki, &g, &store, i, &sig)
            } else {
                compute_instances(&ki, &store, i, &sig)
            };
            (terms, inst)
        };
        let mut trace = LevelTrace { level: i, k: ki, terms, ..Default::default() };
        let mut instances = Vec::new();
        let mut inst_ground = true;
        for mut c in inst.clauses {
            if opts.unpseudofy {
                c = simplify_ext_args(&unpseudofy_clause(&c), &sig).with_level(&sig);
            }
            if c.guard.is_none() && !c.is_ground() {
                inst_ground = false;
            }
            for d in expand_guard(c, &mut sig, opts) {
                if !instances.contains(&d) {
                    instances.push(d);
                }
            }
        }
        trace.instances = instances.clone();
        if opts.no_separation {
            levels.push(trace);
            return Reduction {
                signature: sig,
                base,
                query: g,
                remaining: rest,
                levels,
                ground: ground && inst_ground,
                abort: None,
                separated: false,
            };
        }
        let p = purify(&instances, &g, i, &mut sig, &mut next_e);
        let level_ground = inst_ground && p.ground;
        if !level_ground && i > 1 {
            trace.definitions = p.definitions;
            levels.push(trace);
            return Reduction {
                signature: sig,
                base,
                query: g,
                remaining: rest,
                levels,
                ground: false,
                abort: Some(format!("the instances of level {i} are not ground")),
                separated: true,
            };
        }
        ground &= level_ground;
        let (kept, lowered): (Vec<Clause>, Vec<Clause>) = p.instances.into_iter().partition(|c| c.is_ground() || c.level >= i);
        let con = congruence_instances(&p.definitions);
        trace.purified = kept.clone();
        trace.congruence = con.clone();
        trace.definitions = p.definitions;
        g = kept.into_iter().chain(p.query).chain(con).collect();
        let lowered = prepare(lowered, &sig, opts);
        trace.lowered = lowered.clone();
        let (to_base, lower): (Vec<Clause>, Vec<Clause>) = rest.into_iter().chain(lowered).partition(|c| c.level == 0);
        base.extend(to_base);
        k = lower;
        levels.push(trace);
    }
    Reduction { signature: sig, base, query: g, remaining: k, levels, ground, abort: None, separated: true }
}
