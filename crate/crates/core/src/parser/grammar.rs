use std::collections::{BTreeMap, BTreeSet};

use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, SourcePosition};
use crate::syntax::typing::infer_task;
use crate::syntax::{
    ArithOp, ArrayTerm, Atom, Clause, Formula, Guard, Interval, Rel, Signature, Sort, SymbolDecl, SymbolKind, Task, Term, Var,
};

/// Options that change how the input is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    /// Sort of undeclared constants and of declarations that omit their sorts.
    pub default_numeric: Sort,
    /// Accept `3` as well as `_3`.
    pub bare_numerals: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { default_numeric: Sort::Int, bare_numerals: false }
    }
}

pub fn parse_task(text: &str) -> Result<Task, Error> {
    parse_task_with(text, &ParseOptions::default())
}

pub fn parse_task_with(text: &str, opts: &ParseOptions) -> Result<Task, Error> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        opts: *opts,
        sig: Signature::new(opts.default_numeric),
        aliases: BTreeMap::new(),
        defaulted: Vec::new(),
        real_arith: false,
        scopes: Vec::new(),
    };
    let mut task = Task::default();
    let mut seen = BTreeSet::new();
    while p.peek() != &Tok::Eof {
        p.section(&mut task, &mut seen)?;
    }
    if p.real_arith {
        p.sig.default_numeric = Sort::Real;
        for name in &p.defaulted {
            if let Some(d) = p.sig.get_mut(name) {
                if d.domain == Sort::Int {
                    d.domain = Sort::Real;
                }
                if d.range == Sort::Int {
                    d.range = Sort::Real;
                }
            }
        }
    }
    task.signature = p.sig;
    infer_task(&mut task)?;
    let sig = task.signature.clone();
    for c in task.base_axioms.iter_mut().chain(task.extension_axioms.iter_mut()).chain(task.query.iter_mut()) {
        c.level = sig.clause_level(c);
    }
    Ok(task)
}

const SECTIONS: [&str; 11] = [
    "Base_functions",
    "Extension_functions",
    "Relations",
    "Constants",
    "Interval",
    "Stable",
    "Base",
    "Clauses",
    "Formulas",
    "Ground_Formulas",
    "Query",
];

struct Parser {
    toks: Vec<Token>,
    i: usize,
    opts: ParseOptions,
    sig: Signature,
    /// Prefix names such as `plus` declared for a built-in operator.
    aliases: BTreeMap<String, ArithOp>,
    /// Declarations whose sorts were left to the default.
    defaulted: Vec<String>,
    real_arith: bool,
    scopes: Vec<String>,
}

fn error_pos(e: &Error) -> SourcePosition {
    match e {
        Error::Syntax { pos, .. } | Error::ArityMismatch { pos, .. } | Error::Undeclared { pos, .. } => *pos,
        _ => SourcePosition { line: 0, column: 0 },
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> SourcePosition {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, Error> {
        Err(Error::Syntax {
            pos: self.pos(),
            message: format!("unexpected {}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn message<T>(&self, message: String) -> Result<T, Error> {
        Err(Error::Syntax { pos: self.pos(), message, expected: Vec::new() })
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, Error> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            self.fail(&[&tok.to_string()])
        }
    }

    fn is_ident(&self, k: usize, name: &str) -> bool {
        matches!(self.peek_at(k), Tok::Ident(s) if s == name)
    }

    fn ident(&mut self) -> Result<String, Error> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["identifier"]),
        }
    }

    fn natural(&mut self) -> Result<i64, Error> {
        match *self.peek() {
            Tok::Int(n) | Tok::Numeral(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["number"]),
        }
    }

    fn at_section_start(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Define || *self.peek() == Tok::Eof
    }

    fn section(&mut self, task: &mut Task, seen: &mut BTreeSet<String>) -> Result<(), Error> {
        let pos = self.pos();
        let name = match self.peek().clone() {
            Tok::Ident(s) if SECTIONS.contains(&s.as_str()) => s,
            _ => return self.fail(&SECTIONS),
        };
        self.bump();
        self.expect(Tok::Define)?;
        if !seen.insert(name.clone()) {
            return Err(Error::Syntax { pos, message: format!("section {name} appears twice"), expected: Vec::new() });
        }
        match name.as_str() {
            "Base_functions" => self.functions(false),
            "Extension_functions" => self.functions(true),
            "Relations" => self.relations(),
            "Constants" => self.constants(),
            "Interval" => self.interval(),
            "Stable" => self.stable(),
            "Base" => {
                task.base_axioms = self.clause_list(false)?;
                Ok(())
            }
            "Clauses" => {
                task.extension_axioms = self.clause_list(false)?;
                Ok(())
            }
            "Formulas" => {
                task.formulas = self.formula_list()?;
                Ok(())
            }
            "Ground_Formulas" => {
                task.ground_formulas = self.formula_list()?;
                Ok(())
            }
            _ => {
                task.query = self.clause_list(true)?;
                Ok(())
            }
        }
    }

    fn sort(&mut self) -> Result<Sort, Error> {
        let pos = self.pos();
        let name = self.ident()?;
        Sort::parse(&name).ok_or(Error::Syntax {
            pos,
            message: format!("unknown sort `{name}`"),
            expected: ["bool", "int", "real", "pointer", "scalar", "free"].iter().map(|s| s.to_string()).collect(),
        })
    }

    fn add(&mut self, decl: SymbolDecl, pos: SourcePosition) -> Result<(), Error> {
        self.sig.add(decl).map_err(|e| match e {
            Error::Unsupported(message) => Error::Syntax { pos, message, expected: Vec::new() },
            e => e,
        })
    }

    fn list_end(&mut self) -> Result<bool, Error> {
        if *self.peek() == Tok::RBrace {
            self.bump();
            return Ok(true);
        }
        if *self.peek() == Tok::Comma {
            self.bump();
        }
        Ok(false)
    }

    fn functions(&mut self, ext: bool) -> Result<(), Error> {
        self.expect(Tok::LBrace)?;
        while !self.list_end()? {
            let pos = self.pos();
            self.expect(Tok::LParen)?;
            let op = match self.peek() {
                Tok::Plus => Some(ArithOp::Add),
                Tok::Minus => Some(ArithOp::Sub),
                Tok::Star => Some(ArithOp::Mul),
                Tok::Slash => Some(ArithOp::Div),
                _ => None,
            };
            let name = match op {
                Some(op) => {
                    self.bump();
                    op.symbol().to_string()
                }
                None => self.ident()?,
            };
            self.expect(Tok::Comma)?;
            let arity = self.natural()? as usize;
            let mut level = None;
            let mut sorts = Vec::new();
            if *self.peek() == Tok::Comma {
                self.bump();
                level = Some(self.natural()? as u32);
                while *self.peek() == Tok::Comma && sorts.len() < 2 {
                    self.bump();
                    sorts.push(self.sort()?);
                }
            }
            self.expect(Tok::RParen)?;
            let default = self.sig.default_numeric;
            let domain = sorts.first().copied().unwrap_or(default);
            let range = sorts.get(1).copied().unwrap_or(domain);
            if op.is_some() {
                if ext {
                    return Err(Error::Syntax {
                        pos,
                        message: format!("built-in operator {name} cannot be an extension function"),
                        expected: Vec::new(),
                    });
                }
                self.real_arith |= domain == Sort::Real;
                continue;
            }
            if !ext && arity == 2 && level.unwrap_or(0) == 0 {
                let alias = match name.as_str() {
                    "plus" => Some(ArithOp::Add),
                    "minus" => Some(ArithOp::Sub),
                    "times" => Some(ArithOp::Mul),
                    "div" => Some(ArithOp::Div),
                    _ => None,
                };
                if let Some(op) = alias {
                    self.real_arith |= domain == Sort::Real;
                    self.aliases.insert(name, op);
                    continue;
                }
            }
            let decl = if ext {
                SymbolDecl::ext(&name, arity, level.unwrap_or(1), domain, range)
            } else {
                let mut d = SymbolDecl::base(&name, arity, domain, range);
                d.level = level.unwrap_or(0);
                d
            };
            if ext && decl.level == 0 {
                return Err(Error::Syntax {
                    pos,
                    message: format!("extension function {name} must have a level of at least 1"),
                    expected: Vec::new(),
                });
            }
            if sorts.is_empty() {
                self.defaulted.push(name.clone());
            }
            self.add(decl, pos)?;
        }
        Ok(())
    }

    fn relations(&mut self) -> Result<(), Error> {
        self.expect(Tok::LBrace)?;
        while !self.list_end()? {
            let pos = self.pos();
            self.expect(Tok::LParen)?;
            let builtin = matches!(self.peek(), Tok::Le | Tok::Lt | Tok::Ge | Tok::Gt);
            let name = if builtin {
                self.bump();
                None
            } else {
                Some(self.ident()?)
            };
            self.expect(Tok::Comma)?;
            let arity = self.natural()? as usize;
            self.expect(Tok::RParen)?;
            if let Some(name) = name {
                self.defaulted.push(name.clone());
                let decl = SymbolDecl::relation(&name, arity, self.sig.default_numeric);
                self.add(decl, pos)?;
            }
        }
        Ok(())
    }

    fn constants(&mut self) -> Result<(), Error> {
        self.expect(Tok::LBrace)?;
        while !self.list_end()? {
            let pos = self.pos();
            self.expect(Tok::LParen)?;
            let name = self.ident()?;
            self.expect(Tok::Comma)?;
            let sort = self.sort()?;
            self.expect(Tok::RParen)?;
            self.add(SymbolDecl::constant(&name, sort), pos)?;
        }
        Ok(())
    }

    fn strictness(&mut self) -> Result<bool, Error> {
        match self.peek() {
            Tok::Le => {
                self.bump();
                Ok(false)
            }
            Tok::Lt => {
                self.bump();
                Ok(true)
            }
            _ => self.fail(&["<=", "<"]),
        }
    }

    fn interval(&mut self) -> Result<(), Error> {
        let mut iv = Interval::default();
        if matches!(self.peek(), Tok::Ident(_)) {
            self.bump();
            let strict = self.strictness()?;
            iv.upper = Some((self.natural()?, strict));
        } else {
            let lo = self.natural()?;
            let strict = self.strictness()?;
            iv.lower = Some((lo, strict));
            self.ident()?;
            if matches!(self.peek(), Tok::Le | Tok::Lt) {
                let strict = self.strictness()?;
                iv.upper = Some((self.natural()?, strict));
            }
        }
        self.expect(Tok::Semi)?;
        self.sig.interval = Some(iv);
        Ok(())
    }

    fn stable(&mut self) -> Result<(), Error> {
        loop {
            let l = self.natural()?;
            self.sig.stable_levels.insert(l as u32);
            if *self.peek() != Tok::Comma {
                break;
            }
            self.bump();
        }
        self.expect(Tok::Semi)?;
        Ok(())
    }

    fn clause_list(&mut self, ground: bool) -> Result<Vec<Clause>, Error> {
        let mut out = Vec::new();
        while !self.at_section_start() {
            let pos = self.pos();
            let c = self.clause()?;
            if ground && !c.vars.is_empty() {
                return Err(Error::Syntax { pos, message: "query clauses must be ground".into(), expected: Vec::new() });
            }
            out.push(c);
            if *self.peek() == Tok::Semi {
                self.bump();
            } else if !self.at_section_start() {
                return self.fail(&[";"]);
            }
        }
        Ok(out)
    }

    fn formula_list(&mut self) -> Result<Vec<Formula>, Error> {
        let mut out = Vec::new();
        while !self.at_section_start() {
            out.push(self.formula()?);
            if *self.peek() == Tok::Semi {
                self.bump();
            } else if !self.at_section_start() {
                return self.fail(&[";"]);
            }
        }
        Ok(out)
    }

    fn binder(&mut self) -> Result<Vec<Var>, Error> {
        let mut vars = Vec::new();
        loop {
            let name = self.ident()?;
            vars.push(Var::new(&name, self.sig.default_numeric));
            if *self.peek() != Tok::Comma {
                break;
            }
            self.bump();
        }
        Ok(vars)
    }

    fn clause(&mut self) -> Result<Clause, Error> {
        let mut vars = Vec::new();
        if *self.peek() == Tok::LParen && self.is_ident(1, "FORALL") {
            self.bump();
            self.bump();
            vars = self.binder()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Dot)?;
        }
        let depth = self.scopes.len();
        self.scopes.extend(vars.iter().map(|v| v.name.clone()));
        let result = self.clause_body();
        self.scopes.truncate(depth);
        let (guard, antecedent, consequent) = result?;
        Ok(Clause { vars, guard, antecedent, consequent, level: 0 })
    }

    #[allow(clippy::type_complexity)]
    fn clause_body(&mut self) -> Result<(Option<Guard>, Vec<Atom>, Vec<Atom>), Error> {
        let mut guard = None;
        if *self.peek() == Tok::LBrace {
            self.bump();
            let phi = self.formula()?;
            self.expect(Tok::RBrace)?;
            let implies = match self.peek() {
                Tok::Arrow => true,
                Tok::Ident(s) if s == "OR" => false,
                _ => return self.fail(&["-->", "OR"]),
            };
            self.bump();
            guard = Some(Guard { phi, implies });
        }
        let (ante, cons) = self.clause_matrix()?;
        Ok((guard, ante, cons))
    }

    fn clause_matrix(&mut self) -> Result<(Vec<Atom>, Vec<Atom>), Error> {
        if *self.peek() == Tok::Arrow {
            self.bump();
            return Ok((Vec::new(), self.atom_list()?));
        }
        if self.is_ident(0, "OR") && *self.peek_at(1) == Tok::LParen {
            self.bump();
            self.bump();
            let (mut ante, mut cons) = (Vec::new(), Vec::new());
            loop {
                let (positive, a) = self.literal()?;
                if positive { cons.push(a) } else { ante.push(a) }
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.bump();
            }
            self.expect(Tok::RParen)?;
            return Ok((ante, cons));
        }
        let pos = self.pos();
        let (positive, first) = self.literal()?;
        if !matches!(self.peek(), Tok::Comma | Tok::Arrow) {
            return Ok(if positive { (Vec::new(), vec![first]) } else { (vec![first], Vec::new()) });
        }
        if !positive {
            return Err(Error::Syntax { pos, message: "negated atom in a sorted clause".into(), expected: Vec::new() });
        }
        let mut ante = vec![first];
        while *self.peek() == Tok::Comma {
            self.bump();
            ante.push(self.atom()?);
        }
        self.expect(Tok::Arrow)?;
        Ok((ante, self.atom_list()?))
    }

    fn atom_list(&mut self) -> Result<Vec<Atom>, Error> {
        let mut out = Vec::new();
        if *self.peek() == Tok::Semi || self.at_section_start() {
            return Ok(out);
        }
        loop {
            out.push(self.atom()?);
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.bump();
        }
    }

    fn literal(&mut self) -> Result<(bool, Atom), Error> {
        if self.is_ident(0, "NOT") && *self.peek_at(1) == Tok::LParen {
            self.bump();
            self.bump();
            let a = self.atom()?;
            self.expect(Tok::RParen)?;
            Ok((false, a))
        } else {
            Ok((true, self.atom()?))
        }
    }

    fn formula(&mut self) -> Result<Formula, Error> {
        if *self.peek_at(1) == Tok::LParen {
            for kw in ["NOT", "AND", "OR"] {
                if self.is_ident(0, kw) {
                    self.bump();
                    self.bump();
                    let mut args = vec![self.formula()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.formula()?);
                    }
                    self.expect(Tok::RParen)?;
                    return match kw {
                        "NOT" if args.len() == 1 => Ok(Formula::not(args.pop().unwrap())),
                        "NOT" => self.message("NOT takes one argument".into()),
                        "AND" => Ok(Formula::And(args)),
                        _ => Ok(Formula::Or(args)),
                    };
                }
            }
        }
        if *self.peek() == Tok::LParen {
            if self.is_ident(1, "FORALL") || self.is_ident(1, "EXISTS") {
                self.bump();
                let exists = self.is_ident(0, "EXISTS");
                self.bump();
                let vars = self.binder()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Dot)?;
                let depth = self.scopes.len();
                self.scopes.extend(vars.iter().map(|v| v.name.clone()));
                let body = self.formula();
                self.scopes.truncate(depth);
                let body = body?;
                return Ok(if exists { Formula::exists(vars, body) } else { Formula::forall(vars, body) });
            }
            let start = self.i;
            let grouped = self.grouped_formula();
            match grouped {
                Ok(f) => return Ok(f),
                Err(e1) => {
                    self.i = start;
                    return match self.atom() {
                        Ok(a) => Ok(Formula::Atom(a)),
                        Err(e2) => Err(if error_pos(&e1) >= error_pos(&e2) { e1 } else { e2 }),
                    };
                }
            }
        }
        Ok(Formula::Atom(self.atom()?))
    }

    fn grouped_formula(&mut self) -> Result<Formula, Error> {
        self.expect(Tok::LParen)?;
        let a = self.formula()?;
        let f = match self.peek() {
            Tok::Arrow => {
                self.bump();
                Formula::implies(a, self.formula()?)
            }
            Tok::Iff => {
                self.bump();
                Formula::Iff(Box::new(a), Box::new(self.formula()?))
            }
            _ => a,
        };
        self.expect(Tok::RParen)?;
        Ok(f)
    }

    fn atom(&mut self) -> Result<Atom, Error> {
        if let Tok::Ident(p) = self.peek().clone() {
            if *self.peek_at(1) == Tok::LBracket {
                let pos = self.pos();
                match self.sig.get(&p) {
                    Some(d) if d.kind == SymbolKind::Relation => {}
                    _ => return Err(Error::Undeclared { pos, name: p }),
                }
                self.bump();
                self.bump();
                let args = self.arguments(Tok::RBracket)?;
                self.check_arity(&p, args.len(), pos)?;
                return Ok(Atom::Pred(p, args));
            }
        }
        let l = self.term()?;
        let rel = match self.peek() {
            Tok::Eq => None,
            Tok::Le => Some(Rel::Le),
            Tok::Lt => Some(Rel::Lt),
            Tok::Ge => Some(Rel::Ge),
            Tok::Gt => Some(Rel::Gt),
            _ => return self.fail(&["=", "<=", "<", ">=", ">"]),
        };
        self.bump();
        let r = self.term()?;
        Ok(match rel {
            None => Atom::Eq(l, r),
            Some(rel) => Atom::Ineq(rel, l, r),
        })
    }

    fn arguments(&mut self, close: Tok) -> Result<Vec<Term>, Error> {
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(close)?;
        Ok(args)
    }

    fn check_arity(&self, name: &str, found: usize, pos: SourcePosition) -> Result<(), Error> {
        let expected = self.sig.get(name).map(|d| d.arity).unwrap_or(0);
        if expected != found {
            return Err(Error::ArityMismatch { pos, symbol: name.to_string(), expected, found });
        }
        Ok(())
    }

    fn term(&mut self) -> Result<Term, Error> {
        let mut l = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(l),
            };
            self.bump();
            l = Term::arith(op, l, self.product()?);
        }
    }

    fn product(&mut self) -> Result<Term, Error> {
        let mut l = self.primary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => ArithOp::Mul,
                Tok::Slash => ArithOp::Div,
                _ => return Ok(l),
            };
            self.bump();
            l = Term::arith(op, l, self.primary()?);
        }
    }

    fn primary(&mut self) -> Result<Term, Error> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Numeral(n) => {
                self.bump();
                Ok(Term::Num(n))
            }
            Tok::Int(n) if self.opts.bare_numerals => {
                self.bump();
                Ok(Term::Num(n))
            }
            Tok::Int(n) => self.message(format!("numerals are written with a leading underscore, as in `_{n}`")),
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) if (name == "write" || name == "update") && *self.peek_at(1) == Tok::LParen => {
                let arr = self.array()?;
                if *self.peek() != Tok::LParen {
                    return self.message("an updated array must be applied to an index".into());
                }
                self.bump();
                let args = self.arguments(Tok::RParen)?;
                self.check_arity(arr.root(), args.len(), pos)?;
                Ok(Term::Read(Box::new(arr), args))
            }
            Tok::Ident(name) => {
                self.bump();
                let bound = self.scopes.iter().any(|v| *v == name);
                if *self.peek() == Tok::LParen {
                    if let Some(&op) = self.aliases.get(&name) {
                        self.bump();
                        let args = self.arguments(Tok::RParen)?;
                        if args.len() != 2 {
                            return Err(Error::ArityMismatch { pos, symbol: name, expected: 2, found: args.len() });
                        }
                        let mut it = args.into_iter();
                        return Ok(Term::arith(op, it.next().unwrap(), it.next().unwrap()));
                    }
                    match self.sig.get(&name) {
                        Some(d) if !bound && matches!(d.kind, SymbolKind::BaseFun | SymbolKind::ExtFun) => {}
                        _ => return Err(Error::Undeclared { pos, name }),
                    }
                    self.bump();
                    let args = self.arguments(Tok::RParen)?;
                    self.check_arity(&name, args.len(), pos)?;
                    return Ok(Term::App(name, args));
                }
                if bound {
                    return Ok(Term::Var(name));
                }
                match self.sig.get(&name) {
                    Some(d) if d.kind == SymbolKind::Relation => {
                        self.message(format!("relation `{name}` takes its arguments in square brackets"))
                    }
                    Some(d) if d.arity > 0 => {
                        Err(Error::ArityMismatch { pos, symbol: name, expected: d.arity, found: 0 })
                    }
                    _ => Ok(Term::Const(name)),
                }
            }
            _ => self.fail(&["term"]),
        }
    }

    fn array(&mut self) -> Result<ArrayTerm, Error> {
        self.bump();
        self.expect(Tok::LParen)?;
        let pos = self.pos();
        let inner = if (self.is_ident(0, "write") || self.is_ident(0, "update")) && *self.peek_at(1) == Tok::LParen {
            self.array()?
        } else {
            let name = self.ident()?;
            match self.sig.get(&name) {
                Some(d) if matches!(d.kind, SymbolKind::BaseFun | SymbolKind::ExtFun) && d.arity == 1 => {}
                Some(_) => return Err(Error::Syntax { pos, message: format!("`{name}` is not an array"), expected: Vec::new() }),
                None => return Err(Error::Undeclared { pos, name }),
            }
            ArrayTerm::Base(name)
        };
        self.expect(Tok::Comma)?;
        let i = self.term()?;
        self.expect(Tok::Comma)?;
        let x = self.term()?;
        self.expect(Tok::RParen)?;
        Ok(ArrayTerm::Write(Box::new(inner), i, x))
    }
}
