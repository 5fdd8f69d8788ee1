//! Printers for the input syntax and for the prefix style used in traces.

use std::fmt::{self, Display, Formatter, Write};

use super::{ArrayTerm, Atom, Clause, Formula, Term, Var};

fn numeral(n: i64) -> String {
    if n < 0 {
        format!("(_0 - _{})", n.unsigned_abs())
    } else {
        format!("_{n}")
    }
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::Num(n) => f.write_str(&numeral(*n)),
            Term::App(g, args) => write!(f, "{g}({})", join(args)),
            Term::Arith(op, l, r) => write!(f, "{} {} {}", Operand(l), op.symbol(), Operand(r)),
            Term::Read(arr, args) => write!(f, "{arr}({})", join(args)),
        }
    }
}

struct Operand<'a>(&'a Term);

impl Display for Operand<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            t @ Term::Arith(..) => write!(f, "({t})"),
            Term::Num(n) if *n < 0 => f.write_str(&numeral(*n)),
            t => write!(f, "{t}"),
        }
    }
}

impl Display for ArrayTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ArrayTerm::Base(a) => f.write_str(a),
            ArrayTerm::Write(inner, i, x) => write!(f, "write({inner}, {i}, {x})"),
        }
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(l, r) => write!(f, "{l} = {r}"),
            Atom::Ineq(rel, l, r) => write!(f, "{l} {} {r}", rel.symbol()),
            Atom::Pred(p, args) => write!(f, "{p}[{}]", join(args)),
        }
    }
}

fn var_list(vs: &[Var]) -> String {
    vs.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(", ")
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => write!(f, "NOT({g})"),
            Formula::And(gs) => write!(f, "AND({})", join(gs)),
            Formula::Or(gs) => write!(f, "OR({})", join(gs)),
            Formula::Implies(a, b) => write!(f, "({a} --> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <--> {b})"),
            Formula::Forall(vs, g) => write!(f, "(FORALL {}). {g}", var_list(vs)),
            Formula::Exists(vs, g) => write!(f, "(EXISTS {}). {g}", var_list(vs)),
        }
    }
}

/// Clause in input syntax, without the closing `;`.
pub fn loc_clause(c: &Clause) -> String {
    let mut out = String::new();
    if !c.vars.is_empty() {
        let _ = write!(out, "(FORALL {}). ", var_list(&c.vars));
    }
    if let Some(g) = &c.guard {
        let _ = write!(out, "{{ {} }} {} ", g.phi, if g.implies { "-->" } else { "OR" });
    }
    match (c.antecedent.as_slice(), c.consequent.as_slice()) {
        ([], [a]) => {
            let _ = write!(out, "{a}");
        }
        ([a], []) => {
            let _ = write!(out, "NOT({a})");
        }
        ([], cons) => {
            let _ = write!(out, "--> {}", join(cons));
        }
        (ante, cons) => {
            let _ = write!(out, "{} --> {}", join(ante), join(cons));
        }
    }
    out.trim_end().to_string()
}

/// Prefix form used in traces: `+(u, _1)`.
pub struct Prefix<'a, T>(pub &'a T);

impl Display for Prefix<'_, Term> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::Num(n) => write!(f, "_{n}"),
            Term::App(g, args) => write!(f, "{g}({})", prefix_list(args)),
            Term::Arith(op, l, r) => write!(f, "{}({}, {})", op.symbol(), Prefix(&**l), Prefix(&**r)),
            Term::Read(arr, args) => write!(f, "read({}, {})", Prefix(&**arr), prefix_list(args)),
        }
    }
}

impl Display for Prefix<'_, ArrayTerm> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            ArrayTerm::Base(a) => f.write_str(a),
            ArrayTerm::Write(inner, i, x) => write!(f, "write({}, {}, {})", Prefix(&**inner), Prefix(i), Prefix(x)),
        }
    }
}

impl Display for Prefix<'_, Atom> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Atom::Eq(l, r) => write!(f, "{} = {}", Prefix(l), Prefix(r)),
            Atom::Ineq(rel, l, r) => write!(f, "{} {} {}", Prefix(l), rel.symbol(), Prefix(r)),
            Atom::Pred(p, args) => write!(f, "{p}[{}]", prefix_list(args)),
        }
    }
}

impl Display for Prefix<'_, Formula> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let list = |gs: &[Formula]| gs.iter().map(|g| Prefix(g).to_string()).collect::<Vec<_>>().join(", ");
        match self.0 {
            Formula::Atom(a) => write!(f, "{}", Prefix(a)),
            Formula::Not(g) => write!(f, "NOT({})", Prefix(&**g)),
            Formula::And(gs) => write!(f, "AND( {})", list(gs)),
            Formula::Or(gs) => write!(f, "OR( {})", list(gs)),
            Formula::Implies(a, b) => write!(f, "({} --> {})", Prefix(&**a), Prefix(&**b)),
            Formula::Iff(a, b) => write!(f, "({} <--> {})", Prefix(&**a), Prefix(&**b)),
            Formula::Forall(vs, g) => write!(f, "(FORALL {}). {}", var_list(vs), Prefix(&**g)),
            Formula::Exists(vs, g) => write!(f, "(EXISTS {}). {}", var_list(vs), Prefix(&**g)),
        }
    }
}

fn prefix_list(ts: &[Term]) -> String {
    ts.iter().map(|t| Prefix(t).to_string()).collect::<Vec<_>>().join(", ")
}

fn prefix_atoms(atoms: &[Atom]) -> String {
    atoms.iter().map(|a| Prefix(a).to_string()).collect::<Vec<_>>().join(", ")
}

/// Sorted clause in trace style: `[i, x_1] x_1 = i ---> a(i) = b(x_1)`.
impl Display for Clause {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            write!(f, "[{}] ", var_list(&self.vars))?;
        }
        if let Some(g) = &self.guard {
            write!(f, "{{{}}} {} ", Prefix(&g.phi), if g.implies { "-->" } else { "OR" })?;
        }
        write!(f, "{} ---> {}", prefix_atoms(&self.antecedent), prefix_atoms(&self.consequent))
    }
}

/// Key used for every deterministic ordering of terms.
pub fn sort_key(t: &Term) -> String {
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sort;

    #[test]
    fn infix_and_prefix_forms() {
        let t = Term::minus(Term::plus(Term::cons("u"), 1), 1);
        assert_eq!(t.to_string(), "(u + _1) - _1");
        assert_eq!(Prefix(&t).to_string(), "-(+(u, _1), _1)");
    }

    #[test]
    fn read_through_write() {
        let w = ArrayTerm::Write(Box::new(ArrayTerm::Base("a".into())), Term::plus(Term::cons("u"), 1), Term::cons("x"));
        let t = Term::Read(Box::new(w), vec![Term::var("i")]);
        assert_eq!(t.to_string(), "write(a, u + _1, x)(i)");
        assert_eq!(Prefix(&t).to_string(), "read(write(a, +(u, _1), x), i)");
    }

    #[test]
    fn trace_clause() {
        let c = Clause::new(
            vec![Var::new("z_1", Sort::Int)],
            vec![Atom::le(Term::cons("l"), Term::var("z_1"))],
            vec![Atom::eq(Term::app("a", vec![Term::var("z_1")]), Term::app("b", vec![Term::var("z_1")]))],
        );
        assert_eq!(c.to_string(), "[z_1] l <= z_1 ---> a(z_1) = b(z_1)");
        assert_eq!(loc_clause(&c), "(FORALL z_1). l <= z_1 --> a(z_1) = b(z_1)");
        let unit = Clause::ground(vec![Atom::le(Term::cons("l"), Term::cons("u"))], vec![]);
        assert_eq!(loc_clause(&unit), "NOT(l <= u)");
    }
}
