use std::fmt;

/// Sorts of the many-sorted input language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Int,
    Real,
    Bool,
    Scalar,
    Pointer(u8),
    Free(u8),
}

impl Sort {
    pub fn is_numeric(self) -> bool {
        matches!(self, Sort::Int | Sort::Real)
    }

    pub fn is_pointer(self) -> bool {
        matches!(self, Sort::Pointer(_))
    }

    /// Uninterpreted sorts need a `declare-sort` on the solver side.
    pub fn is_uninterpreted(self) -> bool {
        matches!(self, Sort::Scalar | Sort::Pointer(_) | Sort::Free(_))
    }

    /// Parses a sort name such as `int`, `pointer`, `pointer#2` or `free#1`.
    pub fn parse(name: &str) -> Option<Sort> {
        let (base, index) = match name.split_once('#') {
            Some((b, i)) => (b, Some(i.parse::<u8>().ok().filter(|k| *k >= 1)?)),
            None => (name, None),
        };
        match (base, index) {
            ("int", None) => Some(Sort::Int),
            ("real", None) => Some(Sort::Real),
            ("bool", None) => Some(Sort::Bool),
            ("scalar", None) => Some(Sort::Scalar),
            ("pointer", i) => Some(Sort::Pointer(i.unwrap_or(1))),
            ("free", i) => Some(Sort::Free(i.unwrap_or(1))),
            _ => None,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Int => write!(f, "int"),
            Sort::Real => write!(f, "real"),
            Sort::Bool => write!(f, "bool"),
            Sort::Scalar => write!(f, "scalar"),
            Sort::Pointer(1) => write!(f, "pointer"),
            Sort::Pointer(k) => write!(f, "pointer#{k}"),
            Sort::Free(1) => write!(f, "free"),
            Sort::Free(k) => write!(f, "free#{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_default_to_one() {
        assert_eq!(Sort::parse("pointer"), Some(Sort::Pointer(1)));
        assert_eq!(Sort::parse("free"), Some(Sort::Free(1)));
        assert_eq!(Sort::parse("free#2"), Some(Sort::Free(2)));
        assert_eq!(Sort::parse("pointer#0"), None);
        assert_eq!(Sort::parse("int#1"), None);
    }

    #[test]
    fn display_round_trips() {
        for s in [Sort::Int, Sort::Real, Sort::Bool, Sort::Scalar, Sort::Pointer(1), Sort::Pointer(3), Sort::Free(1), Sort::Free(2)] {
            assert_eq!(Sort::parse(&s.to_string()), Some(s));
        }
    }
}
