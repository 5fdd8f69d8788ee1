//! Solver models, their back-translation to the extension symbols, and direct evaluation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;

use super::sexpr::{parse_all, Sexp};
use crate::error::Error;
use crate::reduce::DefinitionMap;
use crate::syntax::{ArithOp, Atom, Clause, Formula, Signature, Sort, SymbolKind, Term};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Bool(bool),
    Num(BigRational),
    /// An element of an uninterpreted sort, named as the solver names it.
    Elem(String),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Num(BigRational::from_integer(n.into()))
    }

    fn num(&self) -> Result<&BigRational, Error> {
        match self {
            Value::Num(r) => Ok(r),
            v => Err(Error::Model(format!("expected a number, found {v}"))),
        }
    }

    fn bool(&self) -> Result<bool, Error> {
        match self {
            Value::Bool(b) => Ok(*b),
            v => Err(Error::Model(format!("expected a Boolean, found {v}"))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Num(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Value::Num(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Elem(e) => f.write_str(e),
        }
    }
}

fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

fn parse_numeral(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigRational = format!("{int}{frac}").parse().ok()?;
    let scale: BigRational = format!("1{}", "0".repeat(frac.len())).parse().ok()?;
    Some(digits / scale)
}

/// Euclidean division as in SMT-LIB `div`.
fn int_div(a: &BigRational, b: &BigRational) -> BigRational {
    let q = a / b;
    if *b > zero() {
        q.floor()
    } else {
        q.ceil()
    }
}

#[derive(Clone, Debug, PartialEq)]
struct FunDef {
    params: Vec<String>,
    body: Sexp,
}

/// Interpretations of level-0 symbols as returned by the solver.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BaseModel {
    funs: BTreeMap<String, FunDef>,
}

impl BaseModel {
    /// Reads every `(define-fun …)` form in the text; other forms are skipped.
    pub fn parse(text: &str) -> Result<BaseModel, Error> {
        let mut model = BaseModel::default();
        let mut todo = parse_all(text)?;
        while let Some(s) = todo.pop() {
            let Sexp::List(items) = s else { continue };
            if items.first().and_then(Sexp::atom) != Some("define-fun") {
                todo.extend(items);
                continue;
            }
            let [_, name, params, _sort, body] = items.as_slice() else {
                return Err(Error::Model("malformed define-fun".into()));
            };
            let name = name.atom().ok_or_else(|| Error::Model("define-fun without a name".into()))?;
            let params = params
                .list()
                .unwrap_or(&[])
                .iter()
                .map(|p| p.list().and_then(|p| p.first()).and_then(Sexp::atom).map(str::to_string))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Model(format!("malformed parameters of `{name}`")))?;
            model.funs.insert(name.to_string(), FunDef { params, body: body.clone() });
        }
        Ok(model)
    }

    pub fn set(&mut self, name: &str, v: Value) {
        let body = match &v {
            Value::Bool(b) => Sexp::Atom(b.to_string()),
            Value::Elem(e) => Sexp::Atom(e.clone()),
            Value::Num(r) => {
                let frac = Sexp::List(vec![
                    Sexp::Atom("/".into()),
                    Sexp::Atom(r.numer().to_string().trim_start_matches('-').into()),
                    Sexp::Atom(r.denom().to_string()),
                ]);
                if *r < zero() {
                    Sexp::List(vec![Sexp::Atom("-".into()), frac])
                } else {
                    frac
                }
            }
        };
        self.funs.insert(name.to_string(), FunDef { params: Vec::new(), body });
    }

    pub fn defines(&self, name: &str) -> bool {
        self.funs.contains_key(name)
    }

    /// Value of a nullary symbol.
    pub fn constant(&self, name: &str) -> Option<Value> {
        self.call(name, &[]).ok().flatten()
    }

    /// Names of the nullary symbols.
    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.funs.iter().filter(|(_, d)| d.params.is_empty()).map(|(n, _)| n.as_str())
    }

    pub fn call(&self, name: &str, args: &[Value]) -> Result<Option<Value>, Error> {
        let Some(def) = self.funs.get(name) else { return Ok(None) };
        if def.params.len() != args.len() {
            return Err(Error::Model(format!("`{name}` applied to {} arguments", args.len())));
        }
        let env: BTreeMap<String, Value> = def.params.iter().cloned().zip(args.iter().cloned()).collect();
        self.eval(&def.body, &env).map(Some)
    }

    fn eval(&self, s: &Sexp, env: &BTreeMap<String, Value>) -> Result<Value, Error> {
        let items = match s {
            Sexp::Atom(a) => return self.eval_atom(a, env),
            Sexp::List(items) => items,
        };
        let head = items.first().and_then(Sexp::atom).ok_or_else(|| Error::Model("unsupported model expression".into()))?;
        let args = &items[1..];
        let vals = || args.iter().map(|a| self.eval(a, env)).collect::<Result<Vec<_>, _>>();
        let nums = || -> Result<Vec<BigRational>, Error> { vals()?.iter().map(|v| v.num().cloned()).collect() };
        Ok(match head {
            "ite" => {
                let [c, a, b] = args else { return Err(Error::Model("malformed ite".into())) };
                if self.eval(c, env)?.bool()? {
                    self.eval(a, env)?
                } else {
                    self.eval(b, env)?
                }
            }
            "let" => {
                let mut inner = env.clone();
                for b in args.first().and_then(Sexp::list).unwrap_or(&[]) {
                    if let Some([Sexp::Atom(x), e]) = b.list() {
                        inner.insert(x.clone(), self.eval(e, env)?);
                    }
                }
                self.eval(args.get(1).ok_or_else(|| Error::Model("malformed let".into()))?, &inner)?
            }
            "=" => Value::Bool(vals()?.windows(2).all(|w| w[0] == w[1])),
            "distinct" => {
                let vs = vals()?;
                Value::Bool(vs.iter().collect::<BTreeSet<_>>().len() == vs.len())
            }
            "not" => Value::Bool(!self.eval(&args[0], env)?.bool()?),
            "and" => Value::Bool(vals()?.iter().map(Value::bool).collect::<Result<Vec<_>, _>>()?.into_iter().all(|b| b)),
            "or" => Value::Bool(vals()?.iter().map(Value::bool).collect::<Result<Vec<_>, _>>()?.into_iter().any(|b| b)),
            "=>" => {
                let vs = vals()?;
                Value::Bool(!vs[0].bool()? || vs[1].bool()?)
            }
            "+" => Value::Num(nums()?.into_iter().fold(zero(), |a, b| a + b)),
            "*" => Value::Num(nums()?.into_iter().fold(BigRational::from_integer(1.into()), |a, b| a * b)),
            "-" => {
                let ns = nums()?;
                match ns.split_first() {
                    Some((x, [])) => Value::Num(-x.clone()),
                    Some((x, rest)) => Value::Num(rest.iter().fold(x.clone(), |a, b| a - b)),
                    None => return Err(Error::Model("empty subtraction".into())),
                }
            }
            "/" | "div" => {
                let ns = nums()?;
                let mut acc = ns[0].clone();
                for d in &ns[1..] {
                    if *d == zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = if head == "div" { int_div(&acc, d) } else { acc / d };
                }
                Value::Num(acc)
            }
            "mod" => {
                let ns = nums()?;
                if ns[1] == zero() {
                    return Err(Error::DivisionByZero);
                }
                Value::Num(&ns[0] - &ns[1] * int_div(&ns[0], &ns[1]))
            }
            "abs" => {
                let n = nums()?[0].clone();
                Value::Num(if n < zero() { -n } else { n })
            }
            "to_real" => Value::Num(nums()?[0].clone()),
            "to_int" => Value::Num(nums()?[0].floor()),
            "<=" | "<" | ">=" | ">" => {
                let ns = nums()?;
                Value::Bool(ns.windows(2).all(|w| match head {
                    "<=" => w[0] <= w[1],
                    "<" => w[0] < w[1],
                    ">=" => w[0] >= w[1],
                    _ => w[0] > w[1],
                }))
            }
            f => {
                let vs = vals()?;
                self.call(f, &vs)?.ok_or_else(|| Error::Model(format!("model does not define `{f}`")))?
            }
        })
    }

    fn eval_atom(&self, a: &str, env: &BTreeMap<String, Value>) -> Result<Value, Error> {
        if let Some(v) = env.get(a) {
            return Ok(v.clone());
        }
        match a {
            "true" => return Ok(Value::Bool(true)),
            "false" => return Ok(Value::Bool(false)),
            _ => {}
        }
        if let Some(r) = parse_numeral(a) {
            return Ok(Value::Num(r));
        }
        Ok(self.call(a, &[])?.unwrap_or_else(|| Value::Elem(a.to_string())))
    }
}

/// Pointwise tables for the extension functions, with default completion elsewhere.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExtensionModel {
    pub tables: BTreeMap<String, BTreeMap<Vec<Value>, Value>>,
    /// Names introduced by the reduction, kept out of listings.
    pub hidden: BTreeSet<String>,
}

/// Evaluation of ground terms of the original signature.
pub struct Evaluator<'a> {
    pub sig: &'a Signature,
    pub base: &'a BaseModel,
    pub ext: &'a ExtensionModel,
}

impl Evaluator<'_> {
    /// Default element of a sort: `null` for pointers, 0, false, or the first constant of the sort.
    pub fn default_value(&self, sort: Sort) -> Value {
        match sort {
            Sort::Int | Sort::Real => Value::int(0),
            Sort::Bool => Value::Bool(false),
            Sort::Pointer(_) if self.sig.get("null").is_some_and(|d| d.range == sort) => {
                self.base.constant("null").unwrap_or_else(|| Value::Elem("null".into()))
            }
            _ => self
                .sig
                .constants()
                .filter(|d| d.range == sort)
                .find_map(|d| self.base.constant(&d.name))
                .unwrap_or_else(|| Value::Elem(format!("{}!default", super::smtlib::smt_sort(sort)))),
        }
    }

    pub fn term(&self, t: &Term) -> Result<Value, Error> {
        match t {
            Term::Num(n) => Ok(Value::int(*n)),
            Term::Const(c) => Ok(self.base.constant(c).unwrap_or_else(|| {
                self.default_value(self.sig.get(c).map(|d| d.range).unwrap_or(self.sig.default_numeric))
            })),
            Term::App(f, args) => {
                let vs = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                if let Some(v) = self.ext.tables.get(f).and_then(|tab| tab.get(&vs)) {
                    return Ok(v.clone());
                }
                if !self.sig.is_ext(f) {
                    if let Some(v) = self.base.call(f, &vs)? {
                        return Ok(v);
                    }
                }
                Ok(self.default_value(self.sig.get(f).map(|d| d.range).unwrap_or(self.sig.default_numeric)))
            }
            Term::Arith(op, l, r) => {
                let (a, b) = (self.term(l)?, self.term(r)?);
                let (a, b) = (a.num()?, b.num()?);
                Ok(Value::Num(match op {
                    ArithOp::Add => a + b,
                    ArithOp::Sub => a - b,
                    ArithOp::Mul => a * b,
                    ArithOp::Div if *b == zero() => return Err(Error::DivisionByZero),
                    ArithOp::Div if self.sig.default_numeric == Sort::Int => int_div(a, b),
                    ArithOp::Div => a / b,
                }))
            }
            Term::Var(v) => Err(Error::Model(format!("cannot evaluate variable `{v}`"))),
            Term::Read(..) => Err(Error::Model("cannot evaluate an array write".into())),
        }
    }

    pub fn atom(&self, a: &Atom) -> Result<bool, Error> {
        match a {
            Atom::Eq(l, r) => Ok(self.term(l)? == self.term(r)?),
            Atom::Ineq(rel, l, r) => {
                let (a, b) = (self.term(l)?, self.term(r)?);
                Ok(rel.holds(a.num()?.cmp(b.num()?)))
            }
            Atom::Pred(p, args) => {
                let vs = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                match self.base.call(p, &vs)? {
                    Some(v) => v.bool(),
                    None => Ok(false),
                }
            }
        }
    }

    pub fn formula(&self, f: &Formula) -> Result<bool, Error> {
        match f {
            Formula::Atom(a) => self.atom(a),
            Formula::Not(g) => Ok(!self.formula(g)?),
            Formula::And(gs) => gs.iter().try_fold(true, |acc, g| Ok(acc && self.formula(g)?)),
            Formula::Or(gs) => gs.iter().try_fold(false, |acc, g| Ok(acc || self.formula(g)?)),
            Formula::Implies(a, b) => Ok(!self.formula(a)? || self.formula(b)?),
            Formula::Iff(a, b) => Ok(self.formula(a)? == self.formula(b)?),
            Formula::Forall(..) | Formula::Exists(..) => Err(Error::Model("cannot evaluate a quantified formula".into())),
        }
    }

    /// Truth of a ground clause.
    pub fn clause(&self, c: &Clause) -> Result<bool, Error> {
        if !c.vars.is_empty() {
            return Err(Error::Model("cannot evaluate a non-ground clause".into()));
        }
        if let Some(g) = &c.guard {
            if self.formula(&g.as_disjunct())? {
                return Ok(true);
            }
        }
        for a in &c.antecedent {
            if !self.atom(a)? {
                return Ok(true);
            }
        }
        for a in &c.consequent {
            if self.atom(a)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Turns every definition `e = f(t̄)` into the table entry `f(t̄ evaluated) = value of e`,
/// from the lowest level up.
pub fn back_translate<'a>(
    base: &BaseModel,
    definitions: impl IntoIterator<Item = &'a DefinitionMap>,
    sig: &Signature,
) -> Result<ExtensionModel, Error> {
    let mut ext = ExtensionModel::default();
    for map in definitions {
        for d in &map.entries {
            ext.hidden.insert(d.name.clone());
            let Term::App(f, args) = &d.term else { continue };
            let ev = Evaluator { sig, base, ext: &ext };
            let key = args.iter().map(|a| ev.term(a)).collect::<Result<Vec<_>, _>>()?;
            let value = ev.term(&Term::cons(&d.name))?;
            let table = ext.tables.entry(f.clone()).or_default();
            match table.get(&key) {
                Some(old) if *old != value => {
                    let shown: Vec<String> = key.iter().map(|v| v.to_string()).collect();
                    return Err(Error::Model(format!(
                        "contradictory entries for {f}({}): {old} and {value}",
                        shown.join(", ")
                    )));
                }
                _ => {
                    table.insert(key, value);
                }
            }
        }
    }
    Ok(ext)
}

impl ExtensionModel {
    /// One `f(args) = value` line per table entry and per base constant of the input, sorted.
    pub fn listing(&self, base: &BaseModel, sig: &Signature) -> Vec<String> {
        let mut lines: Vec<String> = Vec::new();
        for (f, table) in &self.tables {
            for (args, v) in table {
                let shown: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                lines.push(format!("{f}({}) = {v}", shown.join(", ")));
            }
        }
        for c in base.constants() {
            let declared = sig.get(c).is_some_and(|d| d.kind == SymbolKind::Constant);
            if declared && !self.hidden.contains(c) {
                if let Some(v) = base.constant(c) {
                    lines.push(format!("{c} = {v}"));
                }
            }
        }
        lines.sort();
        lines
    }

    /// Graphviz rendering of the pointer-to-pointer unary functions.
    pub fn dot(&self, sig: &Signature) -> String {
        let mut out = String::from("digraph model {\n");
        let mut edges = BTreeSet::new();
        for (f, table) in &self.tables {
            let Some(d) = sig.get(f) else { continue };
            if d.arity != 1 || !d.domain.is_pointer() || !d.range.is_pointer() {
                continue;
            }
            for (args, v) in table {
                edges.insert(format!("  \"{}\" -> \"{v}\" [label=\"{f}\"];\n", args[0]));
            }
        }
        edges.into_iter().for_each(|e| out.push_str(&e));
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::Definition;
    use crate::syntax::SymbolDecl;

    const Z3_STYLE: &str = "(\n  (define-fun e_2 () Int\n    6)\n  (define-fun a () Int 1)\n  (define-fun e_1 () Int\n    5)\n  (define-fun b () Int (- 2))\n  (define-fun h ((x!0 Int)) Int (ite (= x!0 1) 7 (+ x!0 1)))\n)\n";

    fn sig() -> Signature {
        let mut sig = Signature::new(Sort::Int);
        sig.add(SymbolDecl::ext("priority", 1, 1, Sort::Int, Sort::Int)).unwrap();
        for c in ["a", "b"] {
            sig.add(SymbolDecl::constant(c, Sort::Int)).unwrap();
        }
        for c in ["e_1", "e_2"] {
            sig.add(SymbolDecl::constant(c, Sort::Int).implicit()).unwrap();
        }
        sig
    }

    #[test]
    fn reads_values() {
        let m = BaseModel::parse(Z3_STYLE).unwrap();
        assert_eq!(m.constant("b"), Some(Value::int(-2)));
        assert_eq!(m.call("h", &[Value::int(1)]).unwrap(), Some(Value::int(7)));
        assert_eq!(m.call("h", &[Value::int(4)]).unwrap(), Some(Value::int(5)));
        let r = BaseModel::parse("((define-fun x () Real (/ 3.0 2.0)) (define-fun y () Real 0.25))").unwrap();
        assert_eq!(r.constant("x").unwrap().to_string(), "3/2");
        assert_eq!(r.constant("y").unwrap().to_string(), "1/4");
    }

    #[test]
    fn priority_table() {
        let sig = sig();
        let base = BaseModel::parse(Z3_STYLE).unwrap();
        let defs = DefinitionMap {
            level: 1,
            entries: vec![
                Definition { name: "e_1".into(), term: Term::app("priority", vec![Term::cons("a")]) },
                Definition { name: "e_2".into(), term: Term::app("priority", vec![Term::cons("b")]) },
            ],
        };
        let ext = back_translate(&base, [&defs], &sig).unwrap();
        let listing = ext.listing(&base, &sig);
        assert_eq!(listing, ["a = 1", "b = -2", "priority(-2) = 6", "priority(1) = 5"]);
        let ev = Evaluator { sig: &sig, base: &base, ext: &ext };
        assert_eq!(ev.term(&Term::app("priority", vec![Term::cons("b")])).unwrap(), Value::int(6));
        assert_eq!(ev.term(&Term::app("priority", vec![Term::Num(40)])).unwrap(), Value::int(0));
    }

    #[test]
    fn empty_definitions_echo_base() {
        let sig = sig();
        let base = BaseModel::parse(Z3_STYLE).unwrap();
        let ext = back_translate(&base, std::iter::empty(), &sig).unwrap();
        assert!(ext.tables.is_empty());
        assert_eq!(ext.listing(&base, &sig), ["a = 1", "b = -2", "e_1 = 5", "e_2 = 6"]);
    }

    #[test]
    fn contradiction_is_reported() {
        let sig = sig();
        let base = BaseModel::parse(Z3_STYLE).unwrap();
        let defs = DefinitionMap {
            level: 1,
            entries: vec![
                Definition { name: "e_1".into(), term: Term::app("priority", vec![Term::cons("a")]) },
                Definition { name: "e_2".into(), term: Term::app("priority", vec![Term::Num(1)]) },
            ],
        };
        assert!(matches!(back_translate(&base, [&defs], &sig), Err(Error::Model(_))));
    }

    #[test]
    fn set_round_trips() {
        let mut m = BaseModel::default();
        let v = Value::Num(BigRational::new((-7).into(), 3.into()));
        m.set("x", v.clone());
        assert_eq!(m.constant("x"), Some(v));
    }
}
