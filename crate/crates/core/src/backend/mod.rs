//! SMT-LIB output, the external solver, and model back-translation.

pub mod model;
pub mod sexpr;
pub mod smtlib;
pub mod solver;

use std::path::Path;
use std::time::{Duration, Instant};

pub use model::{back_translate, BaseModel, Evaluator, ExtensionModel, Value};
pub use smtlib::{emit, EmitOptions};
pub use solver::{SolverConfig, SolverOutput, SolverStatus};

use crate::error::Error;
use crate::reduce::Reduction;
use crate::syntax::Clause;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Unsat,
    Sat(Option<SatModel>),
    Unknown(String),
}

impl Verdict {
    pub fn word(&self) -> &'static str {
        match self {
            Verdict::Unsat => "unsat",
            Verdict::Sat(_) => "sat",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Unsat => 0,
            Verdict::Sat(_) => 1,
            Verdict::Unknown(_) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SatModel {
    pub base: BaseModel,
    pub extension: ExtensionModel,
}

/// Solver status read under the locality information.
pub fn interpret(raw: SolverStatus, all_local: bool, ground_ok: bool) -> Verdict {
    match raw {
        SolverStatus::Unsat => Verdict::Unsat,
        SolverStatus::Sat if all_local && ground_ok => Verdict::Sat(None),
        SolverStatus::Sat => Verdict::Unknown("locality not established".into()),
        SolverStatus::Unknown => Verdict::Unknown("the solver answered unknown".into()),
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub raw: SolverOutput,
    pub solver_time: Duration,
}

/// Writes the script for the reduced clause set to `script`, runs the solver once and reads the verdict.
pub fn solve(
    reduction: &Reduction,
    script: &Path,
    config: &SolverConfig,
    all_local: bool,
    want_model: bool,
) -> Result<SolveResult, Error> {
    let clauses: Vec<Clause> = reduction.level0();
    let text = emit(&clauses, &reduction.signature, &EmitOptions { model: want_model });
    std::fs::write(script, text)?;
    let start = Instant::now();
    let raw = solver::run(config, script);
    let solver_time = start.elapsed();
    let mut verdict = match (&raw.reason, raw.status) {
        (Some(reason), _) => Verdict::Unknown(reason.clone()),
        (None, status) => interpret(status, all_local, reduction.ground && reduction.separated),
    };
    if let Verdict::Sat(m) = &mut verdict {
        if want_model {
            let base = BaseModel::parse(&raw.rest)?;
            let extension = back_translate(&base, reduction.definitions(), &reduction.signature)?;
            *m = Some(SatModel { base, extension });
        }
    }
    Ok(SolveResult { verdict, raw, solver_time })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy() {
        assert_eq!(interpret(SolverStatus::Unsat, false, false), Verdict::Unsat);
        assert_eq!(interpret(SolverStatus::Sat, true, true), Verdict::Sat(None));
        assert!(matches!(interpret(SolverStatus::Sat, false, true), Verdict::Unknown(_)));
        assert!(matches!(interpret(SolverStatus::Sat, true, false), Verdict::Unknown(_)));
        assert!(matches!(interpret(SolverStatus::Unknown, true, true), Verdict::Unknown(_)));
    }
}
