use std::fmt;

use crate::error::{Error, SourcePosition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `_n`
    Numeral(i64),
    /// A bare non-negative number.
    Int(i64),
    Define,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    Arrow,
    Iff,
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    Plus,
    Minus,
    Star,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Numeral(n) => return write!(f, "`_{n}`"),
            Tok::Int(n) => return write!(f, "`{n}`"),
            Tok::Define => ":=",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Dot => ".",
            Tok::Arrow => "-->",
            Tok::Iff => "<-->",
            Tok::Eq => "=",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: SourcePosition,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '#'
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = SourcePosition { line, column: col };
        let at = |k: usize| chars.get(i + k).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        // `--` starts a comment unless it is the arrow `-->`.
        if c == '-' && at(1) == Some('-') && at(2) != Some('>') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            while j < chars.len() && chars[j] == '\'' {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else if c == '_' && at(1).is_some_and(|d| d.is_ascii_digit()) {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            (Tok::Numeral(number(&chars[i + 1..j], pos)?), j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            (Tok::Int(number(&chars[i..j], pos)?), j - i)
        } else {
            let two: String = chars[i..chars.len().min(i + 4)].iter().collect();
            match c {
                '<' if two.starts_with("<-->") => (Tok::Iff, 4),
                '-' if two.starts_with("-->") => (Tok::Arrow, 3),
                ':' if two.starts_with(":=") => (Tok::Define, 2),
                '<' if two.starts_with("<=") => (Tok::Le, 2),
                '>' if two.starts_with(">=") => (Tok::Ge, 2),
                '<' => (Tok::Lt, 1),
                '>' => (Tok::Gt, 1),
                '{' => (Tok::LBrace, 1),
                '}' => (Tok::RBrace, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '[' => (Tok::LBracket, 1),
                ']' => (Tok::RBracket, 1),
                ',' => (Tok::Comma, 1),
                ';' => (Tok::Semi, 1),
                '.' => (Tok::Dot, 1),
                '=' => (Tok::Eq, 1),
                '+' => (Tok::Plus, 1),
                '-' => (Tok::Minus, 1),
                '*' => (Tok::Star, 1),
                '/' => (Tok::Slash, 1),
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        message: format!("unexpected character `{c}`"),
                        expected: Vec::new(),
                    })
                }
            }
        };
        out.push(Token { tok, pos });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, pos: SourcePosition { line, column: col } });
    Ok(out)
}

fn number(digits: &[char], pos: SourcePosition) -> Result<i64, Error> {
    let s: String = digits.iter().collect();
    s.parse().map_err(|_| Error::Syntax { pos, message: format!("number `{s}` is too large"), expected: Vec::new() })
}
