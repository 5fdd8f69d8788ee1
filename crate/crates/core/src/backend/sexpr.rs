//! Minimal S-expression reader for solver output.

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(l) => Some(l),
            Sexp::Atom(_) => None,
        }
    }
}

fn tokens(text: &str) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ';' => {
                while chars.next().is_some_and(|c| c != '\n') {}
            }
            '(' | ')' => {
                out.push(c.to_string());
                chars.next();
            }
            '|' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('|') => break,
                        Some(c) => s.push(c),
                        None => return Err(Error::Model("unterminated quoted symbol".into())),
                    }
                }
                out.push(s);
            }
            '"' => {
                let mut s = String::from('"');
                chars.next();
                loop {
                    match chars.next() {
                        Some('"') if chars.peek() == Some(&'"') => {
                            chars.next();
                            s.push('"');
                        }
                        Some('"') => break,
                        Some(c) => s.push(c),
                        None => return Err(Error::Model("unterminated string".into())),
                    }
                }
                out.push(s);
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Every top-level expression in `text`.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, Error> {
    let mut stack: Vec<Vec<Sexp>> = vec![Vec::new()];
    for t in tokens(text)? {
        match t.as_str() {
            "(" => stack.push(Vec::new()),
            ")" => {
                let done = stack.pop().filter(|_| !stack.is_empty()).ok_or_else(|| Error::Model("unbalanced `)`".into()))?;
                stack.last_mut().expect("outer frame").push(Sexp::List(done));
            }
            _ => stack.last_mut().expect("frame").push(Sexp::Atom(t)),
        }
    }
    if stack.len() != 1 {
        return Err(Error::Model("unbalanced `(`".into()));
    }
    Ok(stack.pop().unwrap())
}
