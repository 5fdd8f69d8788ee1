//! Sort inference for variables and undeclared constants.

use std::collections::BTreeMap;

use super::{ArrayTerm, Atom, Clause, Formula, Signature, Sort, SymbolDecl, Task, Term};
use crate::error::Error;

/// Sort of a term when it is determined by the signature and the variable sorts.
///
/// Numerals and arithmetic over numerals have no fixed sort and yield `None`.
pub fn term_sort(t: &Term, sig: &Signature, var_sort: &dyn Fn(&str) -> Option<Sort>) -> Option<Sort> {
    match t {
        Term::Var(v) => var_sort(v),
        Term::Const(c) => sig.get(c).map(|d| d.range),
        Term::Num(_) => None,
        Term::App(f, _) => sig.get(f).map(|d| d.range),
        Term::Arith(_, l, r) => term_sort(l, sig, var_sort).or_else(|| term_sort(r, sig, var_sort)),
        Term::Read(arr, _) => sig.get(arr.root()).map(|d| d.range),
    }
}

/// Sort of a term inside a clause, defaulting numerals to the default numeric sort.
pub fn clause_term_sort(t: &Term, c: &Clause, sig: &Signature) -> Sort {
    term_sort(t, sig, &|v| c.var_sort(v)).unwrap_or(sig.default_numeric)
}

/// Sort shared by the two sides of an equation or inequation.
pub fn atom_sort(a: &Atom, sig: &Signature, var_sort: &dyn Fn(&str) -> Option<Sort>) -> Option<Sort> {
    match a {
        Atom::Eq(l, r) | Atom::Ineq(_, l, r) => {
            term_sort(l, sig, var_sort).or_else(|| term_sort(r, sig, var_sort))
        }
        Atom::Pred(..) => None,
    }
}

#[derive(Default)]
struct Solver {
    parent: Vec<usize>,
    sort: Vec<Option<Sort>>,
    numeric: Vec<bool>,
    label: Vec<String>,
}

impl Solver {
    fn node(&mut self, sort: Option<Sort>, numeric: bool, label: &str) -> usize {
        self.parent.push(self.parent.len());
        self.sort.push(sort);
        self.numeric.push(numeric);
        self.label.push(label.to_string());
        self.parent.len() - 1
    }

    fn find(&mut self, mut n: usize) -> usize {
        while self.parent[n] != n {
            self.parent[n] = self.parent[self.parent[n]];
            n = self.parent[n];
        }
        n
    }

    fn union(&mut self, a: usize, b: usize) -> Result<usize, Error> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Ok(ra);
        }
        let sort = match (self.sort[ra], self.sort[rb]) {
            (Some(x), Some(y)) if x != y => {
                let name = if self.label[ra].is_empty() { self.label[rb].clone() } else { self.label[ra].clone() };
                return Err(Error::SortConflict { name, first: x, second: y });
            }
            (x, y) => x.or(y),
        };
        let numeric = self.numeric[ra] || self.numeric[rb];
        self.check_numeric(ra, sort, numeric)?;
        if self.label[rb].is_empty() {
            self.label[rb] = self.label[ra].clone();
        }
        self.parent[ra] = rb;
        self.sort[rb] = sort;
        self.numeric[rb] = numeric;
        Ok(rb)
    }

    fn mark_numeric(&mut self, n: usize) -> Result<(), Error> {
        let r = self.find(n);
        self.numeric[r] = true;
        self.check_numeric(r, self.sort[r], true)
    }

    fn check_numeric(&self, r: usize, sort: Option<Sort>, numeric: bool) -> Result<(), Error> {
        match sort {
            Some(s) if numeric && !s.is_numeric() => Err(Error::SortConflict {
                name: self.label[r].clone(),
                first: s,
                second: Sort::Int,
            }),
            _ => Ok(()),
        }
    }

    fn resolve(&mut self, n: usize, default: Sort) -> Sort {
        let r = self.find(n);
        self.sort[r].unwrap_or(default)
    }
}

/// Walks the task once to build constraints and a second time to write sorts back.
struct Inference<'s> {
    sig: &'s Signature,
    solver: Solver,
    consts: BTreeMap<String, usize>,
    const_order: Vec<String>,
    scopes: Vec<(String, usize)>,
    binder_nodes: Vec<usize>,
}

impl<'s> Inference<'s> {
    fn known(&mut self, s: Sort) -> usize {
        self.solver.node(Some(s), false, "")
    }

    fn term(&mut self, t: &Term) -> Result<usize, Error> {
        match t {
            Term::Var(v) => match self.scopes.iter().rev().find(|(n, _)| n == v) {
                Some(&(_, node)) => Ok(node),
                None => self.constant(v),
            },
            Term::Const(c) => self.constant(c),
            Term::Num(_) => Ok(self.solver.node(None, true, "")),
            Term::App(f, args) => {
                let (dom, range) = self.signature_of(f)?;
                for a in args {
                    let n = self.term(a)?;
                    let d = self.known(dom);
                    self.solver.union(n, d)?;
                }
                Ok(self.known(range))
            }
            Term::Arith(_, l, r) => {
                let nl = self.term(l)?;
                let nr = self.term(r)?;
                let n = self.solver.union(nl, nr)?;
                self.solver.mark_numeric(n)?;
                Ok(n)
            }
            Term::Read(arr, args) => {
                let (dom, range) = self.array(arr)?;
                for a in args {
                    let n = self.term(a)?;
                    let d = self.known(dom);
                    self.solver.union(n, d)?;
                }
                Ok(self.known(range))
            }
        }
    }

    fn array(&mut self, arr: &ArrayTerm) -> Result<(Sort, Sort), Error> {
        match arr {
            ArrayTerm::Base(a) => self.signature_of(a),
            ArrayTerm::Write(inner, i, x) => {
                let (dom, range) = self.array(inner)?;
                let ni = self.term(i)?;
                let d = self.known(dom);
                self.solver.union(ni, d)?;
                let nx = self.term(x)?;
                let r = self.known(range);
                self.solver.union(nx, r)?;
                Ok((dom, range))
            }
        }
    }

    fn signature_of(&self, f: &str) -> Result<(Sort, Sort), Error> {
        self.sig.get(f).map(|d| (d.domain, d.range)).ok_or_else(|| Error::Undeclared {
            pos: crate::error::SourcePosition { line: 0, column: 0 },
            name: f.to_string(),
        })
    }

    fn constant(&mut self, c: &str) -> Result<usize, Error> {
        if let Some(d) = self.sig.get(c) {
            let n = self.solver.node(Some(d.range), false, c);
            return Ok(n);
        }
        if let Some(&n) = self.consts.get(c) {
            return Ok(n);
        }
        let n = self.solver.node(None, false, c);
        self.consts.insert(c.to_string(), n);
        self.const_order.push(c.to_string());
        Ok(n)
    }

    fn atom(&mut self, a: &Atom) -> Result<(), Error> {
        match a {
            Atom::Eq(l, r) => {
                let nl = self.term(l)?;
                let nr = self.term(r)?;
                self.solver.union(nl, nr)?;
            }
            Atom::Ineq(_, l, r) => {
                let nl = self.term(l)?;
                let nr = self.term(r)?;
                let n = self.solver.union(nl, nr)?;
                self.solver.mark_numeric(n)?;
            }
            Atom::Pred(p, args) => {
                let (dom, _) = self.signature_of(p)?;
                for t in args {
                    let n = self.term(t)?;
                    let d = self.known(dom);
                    self.solver.union(n, d)?;
                }
            }
        }
        Ok(())
    }

    fn bind(&mut self, names: impl Iterator<Item = String>) -> usize {
        let depth = self.scopes.len();
        for name in names {
            let n = self.solver.node(None, false, &name);
            self.binder_nodes.push(n);
            self.scopes.push((name, n));
        }
        depth
    }

    fn formula(&mut self, f: &Formula) -> Result<(), Error> {
        match f {
            Formula::Atom(a) => self.atom(a),
            Formula::Not(g) => self.formula(g),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().try_for_each(|g| self.formula(g)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                self.formula(a)?;
                self.formula(b)
            }
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                let depth = self.bind(vs.iter().map(|v| v.name.clone()));
                self.formula(g)?;
                self.scopes.truncate(depth);
                Ok(())
            }
        }
    }

    fn clause(&mut self, c: &Clause) -> Result<(), Error> {
        let depth = self.bind(c.vars.iter().map(|v| v.name.clone()));
        if let Some(g) = &c.guard {
            self.formula(&g.phi)?;
        }
        for a in c.atoms() {
            self.atom(a)?;
        }
        self.scopes.truncate(depth);
        Ok(())
    }
}

fn assign_formula(f: &mut Formula, sorts: &mut impl Iterator<Item = Sort>) {
    match f {
        Formula::Atom(_) => {}
        Formula::Not(g) => assign_formula(g, sorts),
        Formula::And(gs) | Formula::Or(gs) => gs.iter_mut().for_each(|g| assign_formula(g, sorts)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            assign_formula(a, sorts);
            assign_formula(b, sorts);
        }
        Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
            for v in vs.iter_mut() {
                v.sort = sorts.next().expect("binder count");
            }
            assign_formula(g, sorts);
        }
    }
}

fn assign_clause(c: &mut Clause, sorts: &mut impl Iterator<Item = Sort>) {
    for v in c.vars.iter_mut() {
        v.sort = sorts.next().expect("binder count");
    }
    if let Some(g) = &mut c.guard {
        assign_formula(&mut g.phi, sorts);
    }
}

/// Infers sorts of all bound variables and declares every undeclared constant.
///
/// Unconstrained names default to the signature's default numeric sort.
pub fn infer_task(task: &mut Task) -> Result<(), Error> {
    if let Some(p) = task.signature.pointer_sorts().into_iter().next() {
        if !task.signature.contains("null") {
            task.signature.add(SymbolDecl::constant("null", p).implicit())?;
        }
    }
    let default = task.signature.default_numeric;
    let (binder_sorts, new_consts) = {
        let mut inf = Inference {
            sig: &task.signature,
            solver: Solver::default(),
            consts: BTreeMap::new(),
            const_order: Vec::new(),
            scopes: Vec::new(),
            binder_nodes: Vec::new(),
        };
        for c in task.base_axioms.iter().chain(&task.extension_axioms) {
            inf.clause(c)?;
        }
        for f in task.formulas.iter().chain(&task.ground_formulas) {
            inf.formula(f)?;
        }
        for c in &task.query {
            inf.clause(c)?;
        }
        let nodes = std::mem::take(&mut inf.binder_nodes);
        let binder_sorts: Vec<Sort> = nodes.into_iter().map(|n| inf.solver.resolve(n, default)).collect();
        let order = std::mem::take(&mut inf.const_order);
        let new_consts: Vec<(String, Sort)> = order
            .into_iter()
            .map(|c| {
                let n = inf.consts[&c];
                (c, inf.solver.resolve(n, default))
            })
            .collect();
        (binder_sorts, new_consts)
    };
    let mut sorts = binder_sorts.into_iter();
    for c in task.base_axioms.iter_mut().chain(task.extension_axioms.iter_mut()) {
        assign_clause(c, &mut sorts);
    }
    for f in task.formulas.iter_mut().chain(task.ground_formulas.iter_mut()) {
        assign_formula(f, &mut sorts);
    }
    for c in task.query.iter_mut() {
        assign_clause(c, &mut sorts);
    }
    for (name, sort) in new_consts {
        task.signature.add(SymbolDecl::constant(&name, sort).implicit())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{SymbolDecl, Var};

    #[test]
    fn variables_take_the_domain_sort() {
        let mut task = Task::default();
        task.signature.add(SymbolDecl::ext("next", 1, 1, Sort::Pointer(1), Sort::Pointer(1))).unwrap();
        task.extension_axioms.push(Clause::new(
            vec![Var::new("p", Sort::Int)],
            vec![],
            vec![Atom::eq(Term::app("next", vec![Term::var("p")]), Term::cons("null"))],
        ));
        infer_task(&mut task).unwrap();
        assert_eq!(task.extension_axioms[0].vars[0].sort, Sort::Pointer(1));
        assert_eq!(task.signature.get("null").unwrap().range, Sort::Pointer(1));
    }

    #[test]
    fn conflicting_uses_are_reported() {
        let mut task = Task::default();
        task.signature.add(SymbolDecl::ext("f", 1, 1, Sort::Free(1), Sort::Free(1))).unwrap();
        task.query.push(Clause::unit(Atom::le(Term::app("f", vec![Term::cons("c")]), Term::Num(1))));
        assert!(matches!(infer_task(&mut task), Err(Error::SortConflict { .. })));
    }

    #[test]
    fn unconstrained_constants_default_to_numeric() {
        let mut task = Task::default();
        task.query.push(Clause::unit(Atom::eq(Term::cons("a"), Term::cons("b"))));
        infer_task(&mut task).unwrap();
        assert_eq!(task.signature.get("a").unwrap().range, Sort::Int);
        assert!(task.signature.get("b").unwrap().implicit);
    }
}
