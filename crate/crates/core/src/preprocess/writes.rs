use std::collections::BTreeMap;

use crate::error::Error;
use crate::syntax::{ArrayTerm, Atom, Clause, SymbolDecl, Task, Term, Var};

/// Replaces every `write(a, i, x)` by a fresh array `a_wk` with its defining axioms.
///
/// The point axiom `a_wk(i) = x` joins the query, the frame axiom
/// `∀i. i = idx ∨ a_wk(i) = a(i)` joins the extension clauses.
pub fn eliminate_writes(task: &mut Task) -> Result<(), Error> {
    let mut names: BTreeMap<ArrayTerm, String> = BTreeMap::new();
    let mut point = Vec::new();
    let mut frame = Vec::new();
    let mut err = None;
    let mut rewrite = |c: &Clause, task_sig: &mut crate::syntax::Signature| {
        c.map_terms(&mut |t| {
            t.map_bottom_up(&mut |t| match t {
                Term::Read(arr, args) => match name_of(&arr, &mut names, task_sig, &mut point, &mut frame) {
                    Ok(n) => Term::App(n, args),
                    Err(e) => {
                        err.get_or_insert(e);
                        Term::Read(arr, args)
                    }
                },
                t => t,
            })
        })
    };
    let sig = &mut task.signature;
    let base: Vec<Clause> = task.base_axioms.iter().map(|c| rewrite(c, sig)).collect();
    let ext: Vec<Clause> = task.extension_axioms.iter().map(|c| rewrite(c, sig)).collect();
    let query: Vec<Clause> = task.query.iter().map(|c| rewrite(c, sig)).collect();
    if let Some(e) = err {
        return Err(e);
    }
    task.base_axioms = base;
    task.extension_axioms = frame.into_iter().chain(ext).map(|c: Clause| c.with_level(&task.signature)).collect();
    task.query = query.into_iter().chain(point).map(|c| c.with_level(&task.signature)).collect();
    Ok(())
}

fn name_of(
    arr: &ArrayTerm,
    names: &mut BTreeMap<ArrayTerm, String>,
    sig: &mut crate::syntax::Signature,
    point: &mut Vec<Clause>,
    frame: &mut Vec<Clause>,
) -> Result<String, Error> {
    let (inner, idx, val) = match arr {
        ArrayTerm::Base(a) => return Ok(a.clone()),
        ArrayTerm::Write(inner, i, x) => (inner, i, x),
    };
    if let Some(n) = names.get(arr) {
        return Ok(n.clone());
    }
    let old = name_of(inner, names, sig, point, frame)?;
    if !idx.is_ground() || !val.is_ground() {
        return Err(Error::Unsupported(format!("write into {old} with a non-ground index or value")));
    }
    let decl = sig.get(&old).cloned().ok_or_else(|| Error::Unsupported(format!("write into undeclared array {old}")))?;
    if decl.arity != 1 {
        return Err(Error::Unsupported(format!("write into {old} of arity {}", decl.arity)));
    }
    let k = names.len() + 1;
    let fresh = sig.fresh_indexed(&format!("{}_w", arr.root()), k, &Default::default());
    sig.add(SymbolDecl { name: fresh.clone(), implicit: false, ..decl.clone() })?;
    names.insert(arr.clone(), fresh.clone());
    point.push(Clause::unit(Atom::eq(Term::app(&fresh, vec![idx.clone()]), val.clone())));
    let i = Term::var("i");
    frame.push(Clause::new(
        vec![Var::new("i", decl.domain)],
        vec![],
        vec![Atom::eq(i.clone(), idx.clone()), Atom::eq(Term::app(&fresh, vec![i.clone()]), Term::app(&old, vec![i]))],
    ));
    Ok(fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_task;

    #[test]
    fn book_write_gives_one_fresh_array() {
        let src = "Base_functions := {(+,2)}\nExtension_functions := {(a, 1, 1), (b, 1, 1)}\nRelations := {(<=, 2)}\n\
                   Clauses := (FORALL i). l <= i, i <= u --> a(i) = b(i);\n\
                   Query := NOT(write(a, u + _1, b(u + _1))(c) = b(c));";
        let mut task = parse_task(src).unwrap();
        eliminate_writes(&mut task).unwrap();
        assert_eq!(task.extension_axioms[0].to_string(), "[i]  ---> i = +(u, _1), a_w1(i) = a(i)");
        assert_eq!(task.extension_axioms[0].level, 1);
        let q: Vec<String> = task.query.iter().map(|c| c.to_string()).collect();
        assert_eq!(q, vec!["a_w1(c) = b(c) ---> ", " ---> a_w1(+(u, _1)) = b(+(u, _1))"]);
    }

    #[test]
    fn nested_writes_chain() {
        let src = "Extension_functions := {(a, 1, 1)}\nQuery := write(write(a, k, w), l, x)(i) = a(i);";
        let mut task = parse_task(src).unwrap();
        eliminate_writes(&mut task).unwrap();
        let frames: Vec<String> = task.extension_axioms.iter().map(|c| c.to_string()).collect();
        assert_eq!(frames, vec!["[i]  ---> i = k, a_w1(i) = a(i)", "[i]  ---> i = l, a_w2(i) = a_w1(i)"]);
        assert_eq!(task.query[0].to_string(), " ---> a_w2(i) = a(i)");
    }

    #[test]
    fn tasks_without_writes_are_unchanged() {
        let src = "Extension_functions := {(f, 1, 1)}\nClauses := (FORALL x). f(x) <= _1;\nQuery := f(c) = _2;";
        let mut task = parse_task(src).unwrap();
        let before = task.clone();
        eliminate_writes(&mut task).unwrap();
        assert_eq!(task, before);
    }
}
