//! Random extension problems over a free sort and brute-force model search.
//!
//! Each function is free, defined by cases over the constants, or restricted to
//! a range of constants.

use std::collections::BTreeMap;

use hpilot::pipeline::{parse, prepare, reduce, Options};
use hpilot::syntax::{Atom, Clause, Term};
use rand::rngs::StdRng;
use rand::Rng;

const FUNS: [&str; 2] = ["f", "g"];

#[derive(Clone, Debug)]
pub enum Rhs {
    Const(usize),
    Arg,
}

#[derive(Clone, Debug)]
pub enum Axioms {
    Free,
    /// Case k applies when x differs from c1..ck and equals c(k+1); case `consts` when x differs from all.
    Cases(Vec<(usize, Rhs)>),
    Range(Vec<usize>),
}

#[derive(Clone, Debug)]
pub enum GTerm {
    C(usize),
    F(usize, Box<GTerm>),
}

#[derive(Clone, Debug)]
pub struct Lit {
    pub positive: bool,
    pub l: GTerm,
    pub r: GTerm,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub consts: usize,
    pub funs: Vec<(Axioms, u32)>,
    pub query: Vec<Vec<Lit>>,
}

fn c(i: usize) -> String {
    format!("c{}", i + 1)
}

fn gterm_text(t: &GTerm) -> String {
    match t {
        GTerm::C(i) => c(*i),
        GTerm::F(f, a) => format!("{}({})", FUNS[*f], gterm_text(a)),
    }
}

fn random_gterm(rng: &mut StdRng, p: &Problem, depth: usize) -> GTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        GTerm::C(rng.gen_range(0..p.consts))
    } else {
        GTerm::F(rng.gen_range(0..p.funs.len()), Box::new(random_gterm(rng, p, depth - 1)))
    }
}

pub fn random_problem(rng: &mut StdRng) -> Problem {
    let consts = rng.gen_range(1..=3);
    let nfuns = rng.gen_range(1..=2);
    let mut funs = Vec::new();
    for k in 0..nfuns {
        let axioms = match rng.gen_range(0..3) {
            0 => Axioms::Free,
            1 => {
                let mut cases = Vec::new();
                for case in 0..=consts {
                    if rng.gen_bool(0.6) {
                        let rhs = if rng.gen_bool(0.3) { Rhs::Arg } else { Rhs::Const(rng.gen_range(0..consts)) };
                        cases.push((case, rhs));
                    }
                }
                Axioms::Cases(cases)
            }
            _ => {
                let mut range: Vec<usize> = (0..consts).filter(|_| rng.gen_bool(0.5)).collect();
                if range.is_empty() {
                    range.push(rng.gen_range(0..consts));
                }
                Axioms::Range(range)
            }
        };
        let level = if k == 1 && rng.gen_bool(0.3) { 2 } else { 1 };
        funs.push((axioms, level));
    }
    let mut p = Problem { consts, funs, query: Vec::new() };
    for _ in 0..rng.gen_range(1..=4) {
        let lits = (0..rng.gen_range(1..=2))
            .map(|_| Lit { positive: rng.gen_bool(0.5), l: random_gterm(rng, &p, 2), r: random_gterm(rng, &p, 2) })
            .collect();
        p.query.push(lits);
    }
    p
}

impl Problem {
    pub fn to_loc(&self) -> String {
        let decls: Vec<String> = self
            .funs
            .iter()
            .enumerate()
            .map(|(k, (_, level))| format!("({}, 1, {level}, free, free)", FUNS[k]))
            .collect();
        let consts: Vec<String> = (0..self.consts).map(|i| format!("({}, free)", c(i))).collect();
        let mut out = format!(
            "Base_functions := {{}}\nExtension_functions := {{{}}}\nRelations := {{}}\nConstants := {{{}}}\n\n",
            decls.join(", "),
            consts.join(", ")
        );
        let mut clauses = Vec::new();
        for (k, (axioms, _)) in self.funs.iter().enumerate() {
            let f = FUNS[k];
            match axioms {
                Axioms::Free => {}
                Axioms::Cases(cases) => {
                    for (case, rhs) in cases {
                        let rhs = match rhs {
                            Rhs::Const(i) => c(*i),
                            Rhs::Arg => "x".into(),
                        };
                        let ante = if *case < self.consts { format!("x = {}", c(*case)) } else { String::new() };
                        let mut cons: Vec<String> = (0..(*case).min(self.consts)).map(|i| format!("x = {}", c(i))).collect();
                        cons.push(format!("{f}(x) = {rhs}"));
                        clauses.push(format!("(FORALL x). {ante} --> {}", cons.join(", ")));
                    }
                }
                Axioms::Range(range) => {
                    let cons: Vec<String> = range.iter().map(|i| format!("{f}(x) = {}", c(*i))).collect();
                    clauses.push(format!("(FORALL x). --> {}", cons.join(", ")));
                }
            }
        }
        if !clauses.is_empty() {
            out.push_str("Clauses :=\n");
            for cl in clauses {
                out.push_str(&format!("    {cl};\n"));
            }
        }
        out.push_str("\nQuery :=\n");
        for lits in &self.query {
            let neg: Vec<String> =
                lits.iter().filter(|l| !l.positive).map(|l| format!("{} = {}", gterm_text(&l.l), gterm_text(&l.r))).collect();
            let pos: Vec<String> =
                lits.iter().filter(|l| l.positive).map(|l| format!("{} = {}", gterm_text(&l.l), gterm_text(&l.r))).collect();
            out.push_str(&format!("    {} --> {};\n", neg.join(", "), pos.join(", ")));
        }
        out
    }

    fn eval(&self, t: &GTerm, cv: &[usize], tables: &[Vec<usize>]) -> usize {
        match t {
            GTerm::C(i) => cv[*i],
            GTerm::F(f, a) => tables[*f][self.eval(a, cv, tables)],
        }
    }

    fn holds(&self, n: usize, cv: &[usize], tables: &[Vec<usize>]) -> bool {
        for (k, (axioms, _)) in self.funs.iter().enumerate() {
            for x in 0..n {
                let fx = tables[k][x];
                let ok = match axioms {
                    Axioms::Free => true,
                    Axioms::Range(r) => r.iter().any(|i| fx == cv[*i]),
                    Axioms::Cases(cases) => cases.iter().all(|(case, rhs)| {
                        let applies = (0..(*case).min(self.consts)).all(|i| x != cv[i]) && (*case == self.consts || x == cv[*case]);
                        let want = match rhs {
                            Rhs::Const(i) => cv[*i],
                            Rhs::Arg => x,
                        };
                        !applies || fx == want
                    }),
                };
                if !ok {
                    return false;
                }
            }
        }
        self.query.iter().all(|lits| {
            lits.iter().any(|l| (self.eval(&l.l, cv, tables) == self.eval(&l.r, cv, tables)) == l.positive)
        })
    }

    /// A model of K ∪ G with exactly `n` elements exists.
    pub fn brute_force(&self, n: usize) -> bool {
        let k = self.funs.len();
        let slots = self.consts + k * n;
        let total = n.pow(slots as u32);
        (0..total).any(|mut code| {
            let mut digits = Vec::with_capacity(slots);
            for _ in 0..slots {
                digits.push(code % n);
                code /= n;
            }
            let cv = &digits[..self.consts];
            let tables: Vec<Vec<usize>> = (0..k).map(|f| digits[self.consts + f * n..self.consts + (f + 1) * n].to_vec()).collect();
            self.holds(n, cv, &tables)
        })
    }
}

fn value(t: &Term, assign: &BTreeMap<String, usize>) -> Option<usize> {
    match t {
        Term::Const(name) => assign.get(name).copied(),
        _ => panic!("unexpected term {t} in a reduced clause"),
    }
}

/// `Some(truth)` once every constant of the clause is assigned.
fn clause_truth(c: &Clause, assign: &BTreeMap<String, usize>) -> Option<bool> {
    let mut undecided = false;
    let mut lit = |a: &Atom, positive: bool| -> bool {
        match a {
            Atom::Eq(l, r) => match (value(l, assign), value(r, assign)) {
                (Some(x), Some(y)) => (x == y) == positive,
                _ => {
                    undecided = true;
                    false
                }
            },
            other => panic!("unexpected atom {other} in a reduced clause"),
        }
    };
    let sat = c.antecedent.iter().any(|a| lit(a, false)) | c.consequent.iter().any(|a| lit(a, true));
    if sat {
        Some(true)
    } else if undecided {
        None
    } else {
        Some(false)
    }
}

fn search(cs: &[Clause], names: &[String], n: usize, assign: &mut BTreeMap<String, usize>) -> bool {
    if cs.iter().any(|c| clause_truth(c, assign) == Some(false)) {
        return false;
    }
    let Some(next) = names.get(assign.len()) else { return true };
    let used = assign.values().copied().max().map_or(0, |m| m + 1);
    for v in 0..n.min(used + 1) {
        assign.insert(next.clone(), v);
        if search(cs, names, n, assign) {
            return true;
        }
        assign.remove(next);
    }
    false
}

/// A model with at most `n` elements of a ground clause set over constants.
pub fn ground_sat(cs: &[Clause], n: usize) -> bool {
    let mut names: Vec<String> = Vec::new();
    for c in cs {
        assert!(c.is_ground(), "reduced clause {c} is not ground");
        c.visit_terms(&mut |t| {
            if let Term::Const(name) = t {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        });
    }
    search(cs, &names, n, &mut BTreeMap::new())
}

#[derive(Debug)]
pub struct Outcome {
    pub cases: usize,
    pub mismatches: Vec<String>,
}

/// Compares brute force on K ∪ G with the search on the reduced clauses for domain sizes 1 to 3.
pub fn run(rng: &mut StdRng, cases: usize) -> Outcome {
    let mut mismatches = Vec::new();
    for _ in 0..cases {
        let p = random_problem(rng);
        let text = p.to_loc();
        let opts = Options::default();
        let task = parse(&text, &opts).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let prepared = prepare(task, &opts).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let r = reduce(&prepared, &opts);
        let reduced = r.level0();
        for n in 1..=3 {
            let direct = p.brute_force(n);
            let via = ground_sat(&reduced, n);
            let direct_upto = (1..=n).any(|m| p.brute_force(m));
            if direct_upto != via {
                mismatches.push(format!("domain {n}: direct {direct_upto} ({direct} exact), reduced {via}\n{text}"));
            }
        }
    }
    Outcome { cases, mismatches }
}
