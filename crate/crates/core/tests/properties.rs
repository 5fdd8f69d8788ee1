use std::collections::BTreeMap;

use hpilot::preprocess::{flatten_clause, linearize_clause};
use hpilot::reduce::{congruence_count, congruence_instances, purify, Definition, DefinitionMap};
use hpilot::syntax::simplify::simplify_term;
use hpilot::syntax::subst::{subst_term, Substitution};
use hpilot::syntax::{ArithOp, Atom, Clause, Signature, Sort, SymbolDecl, Term, Var};
use proptest::prelude::*;

fn sig() -> Signature {
    let mut sig = Signature::new(Sort::Int);
    sig.add(SymbolDecl::ext("f", 1, 1, Sort::Int, Sort::Int)).unwrap();
    sig.add(SymbolDecl::ext("g", 1, 1, Sort::Int, Sort::Int)).unwrap();
    sig.add(SymbolDecl::ext("h", 2, 1, Sort::Int, Sort::Int)).unwrap();
    for c in ["a", "b", "c"] {
        sig.add(SymbolDecl::constant(c, Sort::Int)).unwrap();
    }
    sig
}

fn leaf(vars: bool) -> BoxedStrategy<Term> {
    let consts = prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(Term::cons);
    let nums = (-3i64..4).prop_map(Term::Num);
    if vars {
        prop_oneof![consts, nums, prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(Term::var)].boxed()
    } else {
        prop_oneof![consts, nums].boxed()
    }
}

fn term(vars: bool) -> impl Strategy<Value = Term> {
    leaf(vars).prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            inner.clone().prop_map(|t| Term::app("g", vec![t])),
            (inner.clone(), inner.clone()).prop_map(|(s, t)| Term::app("h", vec![s, t])),
            (inner.clone(), -2i64..3).prop_map(|(t, k)| Term::plus(t, k)),
        ]
    })
}

fn atom(vars: bool) -> impl Strategy<Value = Atom> {
    (term(vars), term(vars), any::<bool>()).prop_map(|(l, r, eq)| if eq { Atom::eq(l, r) } else { Atom::le(l, r) })
}

fn clause(vars: bool) -> impl Strategy<Value = Clause> {
    (prop::collection::vec(atom(vars), 0..3), prop::collection::vec(atom(vars), 0..3)).prop_map(|(ante, cons)| {
        let mut c = Clause::new(Vec::new(), ante, cons);
        c.vars = c.free_vars().iter().map(|v| Var::new(v, Sort::Int)).collect();
        c
    })
}

fn arith(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![prop_oneof![Just("a"), Just("b")].prop_map(Term::cons), (-5i64..6).prop_map(Term::Num)];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        (inner.clone(), inner, prop_oneof![Just(ArithOp::Add), Just(ArithOp::Sub), Just(ArithOp::Mul)])
            .prop_map(|(l, r, op)| Term::arith(op, l, r))
    })
    .boxed()
}

fn eval(t: &Term, env: &BTreeMap<&str, i128>) -> i128 {
    match t {
        Term::Num(n) => *n as i128,
        Term::Const(c) => env[c.as_str()],
        Term::Arith(op, l, r) => {
            let (l, r) = (eval(l, env), eval(r, env));
            match op {
                ArithOp::Add => l + r,
                ArithOp::Sub => l - r,
                ArithOp::Mul => l * r,
                ArithOp::Div => unreachable!(),
            }
        }
        other => panic!("unexpected {other}"),
    }
}

proptest! {
    #[test]
    fn flatten_is_idempotent(c in clause(true)) {
        let sig = sig();
        let once = flatten_clause(&c, &sig);
        prop_assert_eq!(flatten_clause(&once, &sig), once);
    }

    #[test]
    fn linearize_is_idempotent(c in clause(true)) {
        let sig = sig();
        let once = linearize_clause(&flatten_clause(&c, &sig), &sig);
        prop_assert_eq!(linearize_clause(&once, &sig), once.clone());
    }

    #[test]
    fn simplify_is_idempotent_and_keeps_values(t in arith(4), a in -50i128..50, b in -50i128..50) {
        let s = simplify_term(&t);
        prop_assert_eq!(simplify_term(&s), s.clone());
        let env = BTreeMap::from([("a", a), ("b", b)]);
        prop_assert_eq!(eval(&s, &env), eval(&t, &env));
    }

    #[test]
    fn substitutions_compose(t in term(true), s1 in term(true), s2 in term(false), s3 in term(false)) {
        let first: Substitution = BTreeMap::from([("x".to_string(), s1)]);
        let second: Substitution = BTreeMap::from([("x".to_string(), s2), ("y".to_string(), s3)]);
        let mut composed: Substitution = first.iter().map(|(v, u)| (v.clone(), subst_term(u, &second))).collect();
        for (v, u) in &second {
            composed.entry(v.clone()).or_insert_with(|| u.clone());
        }
        prop_assert_eq!(subst_term(&subst_term(&t, &first), &second), subst_term(&t, &composed));
    }

    #[test]
    fn purification_unfolds_back(cs in prop::collection::vec(clause(false), 1..4)) {
        let mut sig = sig();
        let mut next = 1;
        let cs: Vec<Clause> = cs.iter().map(|c| c.map_terms(&mut |t| simplify_term(t))).collect();
        let p = purify(&[], &cs, 1, &mut sig, &mut next);
        for (orig, pure) in cs.iter().zip(&p.query) {
            let mut ext = false;
            pure.visit_terms(&mut |t| ext |= matches!(t, Term::App(..)));
            prop_assert!(!ext, "{} still has extension terms", pure);
            prop_assert_eq!(&p.definitions.unfold_clause(pure), orig);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn congruence_count_law(heads in prop::collection::vec(0usize..4, 0..20)) {
        let names = ["f", "g", "h", "k"];
        let entries: Vec<Definition> = heads
            .iter()
            .enumerate()
            .map(|(i, h)| Definition { name: format!("e_{}", i + 1), term: Term::app(names[*h], vec![Term::cons(&format!("t{i}"))]) })
            .collect();
        let d = DefinitionMap { level: 1, entries };
        let expected: usize = (0..4).map(|h| { let k = heads.iter().filter(|x| **x == h).count(); k * k.saturating_sub(1) / 2 }).sum();
        prop_assert_eq!(congruence_count(&d), expected);
        prop_assert_eq!(congruence_instances(&d).len(), expected);
    }
}
