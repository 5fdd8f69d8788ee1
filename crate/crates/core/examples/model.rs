//! Back-translation of a solver model without running a solver.
//!
//! The base model below is what a solver might return for the reduced
//! list problem; the definitions turn it into tables for `next` and `priority`.

use hpilot::backend::{back_translate, BaseModel, Evaluator};
use hpilot::reduce::{Definition, DefinitionMap};
use hpilot::syntax::{Sort, SymbolDecl, Term, Signature};

const MODEL: &str = "(
  (define-fun a () pointer pointer!val!0)
  (define-fun b () pointer pointer!val!1)
  (define-fun null () pointer pointer!val!2)
  (define-fun e_1 () pointer pointer!val!1)
  (define-fun e_2 () Int 5)
  (define-fun e_3 () Int 6)
)";

fn main() {
    let mut sig = Signature::new(Sort::Int);
    let p = Sort::Pointer(1);
    sig.add(SymbolDecl::ext("next", 1, 1, p, p)).unwrap();
    sig.add(SymbolDecl::ext("priority", 1, 1, p, Sort::Int)).unwrap();
    for c in ["a", "b", "null"] {
        sig.add(SymbolDecl::constant(c, p)).unwrap();
    }
    let def = |name: &str, f: &str, arg: &str| Definition { name: name.into(), term: Term::app(f, vec![Term::cons(arg)]) };
    let defs = DefinitionMap {
        level: 1,
        entries: vec![def("e_1", "next", "a"), def("e_2", "priority", "a"), def("e_3", "priority", "b")],
    };
    let base = BaseModel::parse(MODEL).expect("model text");
    let ext = back_translate(&base, [&defs], &sig).expect("consistent definitions");
    for line in ext.listing(&base, &sig) {
        println!("{line}");
    }
    let ev = Evaluator { sig: &sig, base: &base, ext: &ext };
    let t = Term::app("next", vec![Term::cons("b")]);
    println!("{t} = {} (completed)", ev.term(&t).expect("ground term"));
    print!("{}", ext.dot(&sig));
}
