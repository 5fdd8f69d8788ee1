use std::collections::{BTreeMap, BTreeSet};

use super::{Clause, Formula, Sort, Term};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    BaseFun,
    ExtFun,
    Relation,
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolDecl {
    pub name: String,
    pub arity: usize,
    pub level: u32,
    pub domain: Sort,
    pub range: Sort,
    pub kind: SymbolKind,
    /// Constants introduced by use rather than by a `Constants` entry.
    pub implicit: bool,
}

impl SymbolDecl {
    pub fn constant(name: &str, sort: Sort) -> SymbolDecl {
        SymbolDecl {
            name: name.to_string(),
            arity: 0,
            level: 0,
            domain: sort,
            range: sort,
            kind: SymbolKind::Constant,
            implicit: false,
        }
    }

    pub fn ext(name: &str, arity: usize, level: u32, domain: Sort, range: Sort) -> SymbolDecl {
        SymbolDecl {
            name: name.to_string(),
            arity,
            level,
            domain,
            range,
            kind: SymbolKind::ExtFun,
            implicit: false,
        }
    }

    pub fn base(name: &str, arity: usize, domain: Sort, range: Sort) -> SymbolDecl {
        SymbolDecl {
            name: name.to_string(),
            arity,
            level: 0,
            domain,
            range,
            kind: SymbolKind::BaseFun,
            implicit: false,
        }
    }

    pub fn relation(name: &str, arity: usize, domain: Sort) -> SymbolDecl {
        SymbolDecl {
            name: name.to_string(),
            arity,
            level: 0,
            domain,
            range: Sort::Bool,
            kind: SymbolKind::Relation,
            implicit: false,
        }
    }

    pub fn implicit(mut self) -> SymbolDecl {
        self.implicit = true;
        self
    }

    pub fn is_arith_op(&self) -> bool {
        matches!(self.name.as_str(), "+" | "-" | "*" | "/")
    }

    pub fn is_infix_relation(&self) -> bool {
        matches!(self.name.as_str(), "<=" | "<" | ">=" | ">")
    }
}

/// `lower ≤ x ≤ upper` restriction on the default numeric sort; the flag marks a strict bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Interval {
    pub lower: Option<(i64, bool)>,
    pub upper: Option<(i64, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    decls: Vec<SymbolDecl>,
    index: BTreeMap<String, usize>,
    pub interval: Option<Interval>,
    pub stable_levels: BTreeSet<u32>,
    pub default_numeric: Sort,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new(Sort::Int)
    }
}

impl Signature {
    pub fn new(default_numeric: Sort) -> Signature {
        Signature {
            decls: Vec::new(),
            index: BTreeMap::new(),
            interval: None,
            stable_levels: BTreeSet::new(),
            default_numeric,
        }
    }

    pub fn decls(&self) -> &[SymbolDecl] {
        &self.decls
    }

    pub fn get(&self, name: &str) -> Option<&SymbolDecl> {
        self.index.get(name).map(|&i| &self.decls[i])
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut SymbolDecl> {
        self.index.get(name).map(|&i| &mut self.decls[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn add(&mut self, decl: SymbolDecl) -> Result<(), Error> {
        if self.index.contains_key(&decl.name) {
            return Err(Error::DuplicateDeclaration(decl.name));
        }
        if matches!(decl.kind, SymbolKind::BaseFun | SymbolKind::Relation) && decl.level != 0 {
            return Err(Error::Unsupported(format!("base symbol {} declared with a nonzero level", decl.name)));
        }
        self.index.insert(decl.name.clone(), self.decls.len());
        self.decls.push(decl);
        Ok(())
    }

    pub fn remove(&mut self, name: &str) {
        if self.index.contains_key(name) {
            self.decls.retain(|d| d.name != name);
            self.index = self.decls.iter().enumerate().map(|(i, d)| (d.name.clone(), i)).collect();
        }
    }

    /// Level of a symbol; undeclared and base symbols live on level 0.
    pub fn level_of(&self, name: &str) -> u32 {
        match self.get(name) {
            Some(d) if d.kind == SymbolKind::ExtFun => d.level,
            _ => 0,
        }
    }

    pub fn is_ext(&self, name: &str) -> bool {
        matches!(self.get(name), Some(d) if d.kind == SymbolKind::ExtFun)
    }

    pub fn ext_symbols(&self) -> impl Iterator<Item = &SymbolDecl> {
        self.decls.iter().filter(|d| d.kind == SymbolKind::ExtFun)
    }

    pub fn constants(&self) -> impl Iterator<Item = &SymbolDecl> {
        self.decls.iter().filter(|d| d.kind == SymbolKind::Constant)
    }

    pub fn max_level(&self) -> u32 {
        self.ext_symbols().map(|d| d.level).max().unwrap_or(0)
    }

    pub fn pointer_sorts(&self) -> BTreeSet<Sort> {
        self.decls
            .iter()
            .flat_map(|d| [d.domain, d.range])
            .filter(|s| s.is_pointer())
            .collect()
    }

    /// Maximum level of the extension symbols heading any subterm of `t`.
    pub fn term_level(&self, t: &Term) -> u32 {
        let mut level = 0;
        t.visit(&mut |s| {
            let l = match s {
                Term::App(f, _) => self.level_of(f),
                Term::Read(arr, _) => self.level_of(arr.root()),
                _ => 0,
            };
            level = level.max(l);
        });
        level
    }

    pub fn formula_level(&self, f: &Formula) -> u32 {
        let mut level = 0;
        f.visit_atoms(&mut |a| {
            for t in a.terms() {
                level = level.max(self.term_level(t));
            }
        });
        level
    }

    pub fn clause_level(&self, c: &Clause) -> u32 {
        let mut level = 0;
        for a in c.atoms() {
            for t in a.terms() {
                level = level.max(self.term_level(t));
            }
        }
        if let Some(g) = &c.guard {
            level = level.max(self.formula_level(&g.phi));
        }
        level
    }

    /// First name of the form `prefix`, `prefix1`, `prefix2`, ... that is neither declared nor in `taken`.
    pub fn fresh_name(&self, prefix: &str, taken: &BTreeSet<String>) -> String {
        if !self.contains(prefix) && !taken.contains(prefix) {
            return prefix.to_string();
        }
        self.fresh_indexed(prefix, 1, taken)
    }

    /// First name `prefix{k}` with `k >= start` that is free.
    pub fn fresh_indexed(&self, prefix: &str, start: usize, taken: &BTreeSet<String>) -> String {
        (start..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| !self.contains(n) && !taken.contains(n))
            .expect("unbounded name supply")
    }
}
