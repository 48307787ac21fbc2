//! Function signatures: named symbols with fixed arities.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A named function symbol together with its arity.
///
/// Symbol names are opaque identifiers without whitespace. Names that could be
/// read as variables (`v` followed by only digits, or a bare `v`) are rejected
/// at signature construction so parsing stays unambiguous. The name is
/// reference-counted because it gets copied into every term token.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: Arc<str>,
    pub arity: usize,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// An ordered list of distinct function symbols.
///
/// The order is the declaration order and only matters for listings; the
/// canonical term order is independent of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, sym) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{sym}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("symbol name may not be empty or contain whitespace: `{0}`")]
    BadName(String),
    #[error("symbol name `{0}` is reserved for variables")]
    ReservedName(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` has arity 0; only symbols of arity >= 1 are supported")]
    ZeroArity(String),
}

/// True when `name` would lex as a variable (`v` or `v<digits>`).
fn is_variable_like(name: &str) -> bool {
    match name.strip_prefix('v') {
        Some(rest) => rest.chars().all(|c| c.is_ascii_digit()),
        None => false,
    }
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<Symbol> = Vec::new();
        for (name, arity) in symbols {
            let name: String = name.into();
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(SignatureError::BadName(name));
            }
            if is_variable_like(&name) {
                return Err(SignatureError::ReservedName(name));
            }
            if arity == 0 {
                return Err(SignatureError::ZeroArity(name));
            }
            if out.iter().any(|s| &*s.name == name.as_str()) {
                return Err(SignatureError::DuplicateSymbol(name));
            }
            out.push(Symbol { name: name.into(), arity });
        }
        Ok(Signature { symbols: out })
    }

    /// The signature with a single binary symbol `f`: the central case of the
    /// whole calculus.
    pub fn single_binary() -> Self {
        Signature::new([("f", 2)]).expect("valid signature")
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.iter().find(|s| &*s.name == name)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The unique binary symbol, if the signature consists of exactly one
    /// symbol of arity 2. The index-doubling construction and the semigroup
    /// checks only make sense in that setting.
    pub fn only_binary(&self) -> Option<&Symbol> {
        match &self.symbols[..] {
            [s] if s.arity == 2 => Some(s),
            _ => None,
        }
    }
}

// === JSON form: {"symbols":[{"name":"f","arity":2}]} ===

#[derive(Serialize, Deserialize)]
struct SignatureJson {
    symbols: Vec<SymbolJson>,
}

#[derive(Serialize, Deserialize)]
struct SymbolJson {
    name: String,
    arity: usize,
}

impl Signature {
    pub fn to_json(&self) -> serde_json::Value {
        let body = SignatureJson {
            symbols: self
                .symbols
                .iter()
                .map(|s| SymbolJson { name: s.name.to_string(), arity: s.arity })
                .collect(),
        };
        serde_json::to_value(body).expect("signature serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        let body: SignatureJson =
            serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        Signature::new(body.symbols.into_iter().map(|s| (s.name, s.arity)))
            .map_err(|e| e.to_string())
    }
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_looks_up_symbols() {
        let sig = Signature::new([("f", 2), ("g", 3)]).unwrap();
        assert_eq!(sig.get("f").unwrap().arity, 2);
        assert_eq!(sig.get("g").unwrap().arity, 3);
        assert!(sig.get("h").is_none());
    }

    #[test]
    fn rejects_variable_like_names() {
        assert_eq!(
            Signature::new([("v", 1)]),
            Err(SignatureError::ReservedName("v".into()))
        );
        assert_eq!(
            Signature::new([("v12", 2)]),
            Err(SignatureError::ReservedName("v12".into()))
        );
        // A name merely starting with `v` is fine.
        assert!(Signature::new([("vx", 2)]).is_ok());
    }

    #[test]
    fn rejects_duplicates_zero_arity_and_bad_names() {
        assert_eq!(
            Signature::new([("f", 2), ("f", 2)]),
            Err(SignatureError::DuplicateSymbol("f".into()))
        );
        assert_eq!(
            Signature::new([("c", 0)]),
            Err(SignatureError::ZeroArity("c".into()))
        );
        assert_eq!(
            Signature::new([("a b", 1)]),
            Err(SignatureError::BadName("a b".into()))
        );
        assert_eq!(Signature::new([("", 1)]), Err(SignatureError::BadName("".into())));
    }

    #[test]
    fn only_binary_detects_the_single_binary_case() {
        assert!(Signature::single_binary().only_binary().is_some());
        assert!(Signature::new([("f", 3)]).unwrap().only_binary().is_none());
        assert!(Signature::new([("f", 2), ("g", 2)]).unwrap().only_binary().is_none());
    }

    #[test]
    fn json_round_trip() {
        let sig = Signature::new([("f", 2), ("cat", 2)]).unwrap();
        let json = sig.to_json();
        assert_eq!(
            json,
            serde_json::json!({"symbols":[{"name":"f","arity":2},{"name":"cat","arity":2}]})
        );
        assert_eq!(Signature::from_json(&json).unwrap(), sig);
    }
}
