use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        }
    }

    pub fn from_symbol(s: &str) -> Option<ArithOp> {
        match s {
            "+" => Some(ArithOp::Add),
            "-" => Some(ArithOp::Sub),
            "*" => Some(ArithOp::Mul),
            "/" => Some(ArithOp::Div),
            _ => None,
        }
    }

    /// Integer evaluation; `None` on overflow or inexact division.
    pub fn apply(self, a: i64, b: i64) -> Option<i64> {
        match self {
            ArithOp::Add => a.checked_add(b),
            ArithOp::Sub => a.checked_sub(b),
            ArithOp::Mul => a.checked_mul(b),
            ArithOp::Div => (b != 0 && a % b == 0).then(|| a / b),
        }
    }
}

/// An array expression built from an array symbol by point updates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrayTerm {
    Base(String),
    Write(Box<ArrayTerm>, Term, Term),
}

impl ArrayTerm {
    pub fn root(&self) -> &str {
        match self {
            ArrayTerm::Base(a) => a,
            ArrayTerm::Write(inner, _, _) => inner.root(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    Num(i64),
    App(String, Vec<Term>),
    Arith(ArithOp, Box<Term>, Box<Term>),
    /// Application of an updated array, `write(a, i, x)(j)`.
    Read(Box<ArrayTerm>, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn cons(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.to_string(), args)
    }

    pub fn arith(op: ArithOp, l: Term, r: Term) -> Term {
        Term::Arith(op, Box::new(l), Box::new(r))
    }

    pub fn plus(l: Term, k: i64) -> Term {
        Term::arith(ArithOp::Add, l, Term::Num(k))
    }

    pub fn minus(l: Term, k: i64) -> Term {
        Term::arith(ArithOp::Sub, l, Term::Num(k))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        let mut ground = true;
        self.visit(&mut |t| {
            if let Term::Var(_) = t {
                ground = false;
            }
        });
        ground
    }

    /// Head symbol of a function application.
    pub fn head(&self) -> Option<&str> {
        match self {
            Term::App(f, _) => Some(f),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) | Term::Read(_, args) => args,
            _ => &[],
        }
    }

    /// Pre-order traversal over every subterm, including write indices and values.
    pub fn visit<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        f(self);
        match self {
            Term::App(_, args) => args.iter().for_each(|a| a.visit(f)),
            Term::Arith(_, l, r) => {
                l.visit(f);
                r.visit(f);
            }
            Term::Read(arr, args) => {
                visit_array(arr, f);
                args.iter().for_each(|a| a.visit(f));
            }
            _ => {}
        }
    }

    /// Bottom-up rebuild: children are mapped first, then `f` is applied to the new node.
    pub fn map_bottom_up(&self, f: &mut dyn FnMut(Term) -> Term) -> Term {
        let rebuilt = match self {
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| a.map_bottom_up(f)).collect()),
            Term::Arith(op, l, r) => Term::arith(*op, l.map_bottom_up(f), r.map_bottom_up(f)),
            Term::Read(arr, args) => Term::Read(
                Box::new(map_array(arr, f)),
                args.iter().map(|a| a.map_bottom_up(f)).collect(),
            ),
            t => t.clone(),
        };
        f(rebuilt)
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        self.visit(&mut |t| {
            if let Term::Var(v) = t {
                out.insert(v.clone());
            }
        });
    }

    pub fn contains_var(&self, name: &str) -> bool {
        let mut found = false;
        self.visit(&mut |t| {
            if let Term::Var(v) = t {
                if v == name {
                    found = true;
                }
            }
        });
        found
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn contains_write(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| {
            if let Term::Read(..) = t {
                found = true;
            }
        });
        found
    }
}

fn visit_array<'a>(arr: &'a ArrayTerm, f: &mut dyn FnMut(&'a Term)) {
    if let ArrayTerm::Write(inner, i, x) = arr {
        visit_array(inner, f);
        i.visit(f);
        x.visit(f);
    }
}

fn map_array(arr: &ArrayTerm, f: &mut dyn FnMut(Term) -> Term) -> ArrayTerm {
    match arr {
        ArrayTerm::Base(a) => ArrayTerm::Base(a.clone()),
        ArrayTerm::Write(inner, i, x) => {
            ArrayTerm::Write(Box::new(map_array(inner, f)), i.map_bottom_up(f), x.map_bottom_up(f))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Le,
    Lt,
    Ge,
    Gt,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Le => "<=",
            Rel::Lt => "<",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Rel> {
        match s {
            "<=" => Some(Rel::Le),
            "<" => Some(Rel::Lt),
            ">=" => Some(Rel::Ge),
            ">" => Some(Rel::Gt),
            _ => None,
        }
    }

    pub fn holds(self, l: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            Rel::Le => l != Greater,
            Rel::Lt => l == Less,
            Rel::Ge => l != Less,
            Rel::Gt => l == Greater,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Eq(Term, Term),
    Ineq(Rel, Term, Term),
    Pred(String, Vec<Term>),
}

impl Atom {
    pub fn eq(l: Term, r: Term) -> Atom {
        Atom::Eq(l, r)
    }

    pub fn le(l: Term, r: Term) -> Atom {
        Atom::Ineq(Rel::Le, l, r)
    }

    /// The top-level argument terms of the atom.
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Eq(l, r) | Atom::Ineq(_, l, r) => vec![l, r],
            Atom::Pred(_, args) => args.iter().collect(),
        }
    }

    pub fn map_terms(&self, f: &mut dyn FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Eq(l, r) => Atom::Eq(f(l), f(r)),
            Atom::Ineq(rel, l, r) => Atom::Ineq(*rel, f(l), f(r)),
            Atom::Pred(p, args) => Atom::Pred(p.clone(), args.iter().map(|a| f(a)).collect()),
        }
    }

    pub fn visit_terms<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        for t in self.terms() {
            t.visit(f);
        }
    }

    pub fn is_ground(&self) -> bool {
        self.terms().iter().all(|t| t.is_ground())
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        for t in self.terms() {
            t.vars_into(out);
        }
    }

    /// `true` when the atom is `s = t` in either orientation.
    pub fn is_eq_between(&self, s: &Term, t: &Term) -> bool {
        match self {
            Atom::Eq(l, r) => (l == s && r == t) || (l == t && r == s),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_and_vars() {
        let t = Term::app("f", vec![Term::plus(Term::var("i"), 1), Term::cons("c")]);
        assert!(!t.is_ground());
        let mut vs = BTreeSet::new();
        t.vars_into(&mut vs);
        assert_eq!(vs.into_iter().collect::<Vec<_>>(), vec!["i".to_string()]);
        assert!(Term::app("f", vec![Term::cons("c")]).is_ground());
    }

    #[test]
    fn bottom_up_map_renames_constants() {
        let t = Term::app("f", vec![Term::app("g", vec![Term::cons("c")])]);
        let r = t.map_bottom_up(&mut |t| match t {
            Term::Const(c) if c == "c" => Term::cons("d"),
            t => t,
        });
        assert_eq!(r, Term::app("f", vec![Term::app("g", vec![Term::cons("d")])]));
    }

    #[test]
    fn relation_semantics() {
        use std::cmp::Ordering::*;
        assert!(Rel::Le.holds(Equal) && !Rel::Lt.holds(Equal));
        assert!(Rel::Gt.holds(Greater) && Rel::Ge.holds(Equal));
    }
}
