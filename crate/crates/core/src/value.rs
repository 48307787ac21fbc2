//! Universe values: the elements orderly terms evaluate to.
//!
//! One sum type covers every universe in the crate — naturals, words and
//! other opaque symbols, pairs, variable-index sets, and terms themselves
//! (the free valuation). Values compare structurally; `Ord` is the canonical
//! universe order used for deterministic listings and defaults.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::signature::Signature;
use crate::term::OrderlyTerm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    /// An arbitrary-precision natural number.
    Nat(BigUint),
    /// An opaque string element: a table-algebra symbol or a variable word.
    Str(String),
    /// An ordered pair, the universe of the doubling construction.
    Pair(Box<Value>, Box<Value>),
    /// A set of variable indices.
    IndexSet(BTreeSet<u32>),
    /// A term, the value of the free (identity) valuation.
    Term(OrderlyTerm),
}

impl Value {
    pub fn nat(n: u64) -> Value {
        Value::Nat(BigUint::from(n))
    }

    pub fn str(s: impl Into<String>) -> Value {
        Value::Str(s.into())
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    pub fn index_set<I: IntoIterator<Item = u32>>(elems: I) -> Value {
        Value::IndexSet(elems.into_iter().collect())
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Nat(_) => 0,
            Value::Str(_) => 1,
            Value::Pair(_, _) => 2,
            Value::IndexSet(_) => 3,
            Value::Term(_) => 4,
        }
    }

    /// JSON encoding. Naturals become numbers while they fit an unsigned
    /// 64-bit integer and decimal strings beyond that; strings stay bare;
    /// pairs become two-element arrays; the other kinds are tagged.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Nat(n) => match u64::try_from(n) {
                Ok(small) => serde_json::json!(small),
                Err(_) => serde_json::json!({ "nat": n.to_string() }),
            },
            Value::Str(s) => serde_json::json!(s),
            Value::Pair(a, b) => serde_json::json!([a.to_json(), b.to_json()]),
            Value::IndexSet(s) => serde_json::json!({ "set": s.iter().collect::<Vec<_>>() }),
            Value::Term(t) => serde_json::json!({ "term": t.to_string() }),
        }
    }

    /// Parse the encoding produced by `to_json` (plus the tagged long forms
    /// `{"nat": …}` and `{"pair": […]}`). Term values need a signature to
    /// parse against; pass `None` in contexts where they cannot occur.
    pub fn from_json(
        value: &serde_json::Value,
        sig: Option<&Signature>,
    ) -> Result<Value, String> {
        use serde_json::Value as J;
        match value {
            J::Number(n) => {
                let as_u64 = n
                    .as_u64()
                    .ok_or_else(|| format!("{n} is not an unsigned integer"))?;
                Ok(Value::nat(as_u64))
            }
            J::String(s) => Ok(Value::Str(s.clone())),
            J::Array(items) if items.len() == 2 => Ok(Value::pair(
                Value::from_json(&items[0], sig)?,
                Value::from_json(&items[1], sig)?,
            )),
            J::Array(_) => Err("untyped arrays must have exactly 2 entries (a pair)".into()),
            J::Object(map) => {
                if let Some(n) = map.get("nat") {
                    let digits = n.as_str().ok_or("\"nat\" takes a decimal string")?;
                    let parsed = digits
                        .parse::<BigUint>()
                        .map_err(|_| format!("bad natural `{digits}`"))?;
                    return Ok(Value::Nat(parsed));
                }
                if let Some(s) = map.get("set") {
                    let items = s.as_array().ok_or("\"set\" takes an array")?;
                    let mut set = BTreeSet::new();
                    for item in items {
                        let i = item
                            .as_u64()
                            .and_then(|i| u32::try_from(i).ok())
                            .ok_or("set entries must be small naturals")?;
                        set.insert(i);
                    }
                    return Ok(Value::IndexSet(set));
                }
                if let Some(p) = map.get("pair") {
                    let items = p.as_array().filter(|a| a.len() == 2).ok_or(
                        "\"pair\" takes a two-element array",
                    )?;
                    return Ok(Value::pair(
                        Value::from_json(&items[0], sig)?,
                        Value::from_json(&items[1], sig)?,
                    ));
                }
                if let Some(t) = map.get("term") {
                    let text = t.as_str().ok_or("\"term\" takes a string")?;
                    let sig = sig.ok_or("term values need a signature context")?;
                    let term = OrderlyTerm::parse(text, sig).map_err(|e| e.to_string())?;
                    return Ok(Value::Term(term));
                }
                Err("unrecognized value object".into())
            }
            _ => Err("unsupported JSON value".into()),
        }
    }

    /// Parse the display text form (used in table keys): digits, `(a,b)`,
    /// `{i,j}`, anything else an opaque string.
    pub fn parse_text(text: &str) -> Result<Value, String> {
        let text = text.trim();
        if text.is_empty() {
            return Err("empty value text".into());
        }
        if text.chars().all(|c| c.is_ascii_digit()) {
            return text
                .parse::<BigUint>()
                .map(Value::Nat)
                .map_err(|_| format!("bad natural `{text}`"));
        }
        if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let parts = split_top_level(inner);
            if parts.len() != 2 {
                return Err(format!("pair text `{text}` must have two components"));
            }
            return Ok(Value::pair(
                Value::parse_text(parts[0])?,
                Value::parse_text(parts[1])?,
            ));
        }
        if let Some(inner) = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let mut set = BTreeSet::new();
            if !inner.trim().is_empty() {
                for part in split_top_level(inner) {
                    let i = part
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| format!("bad index `{part}` in set text"))?;
                    set.insert(i);
                }
            }
            return Ok(Value::IndexSet(set));
        }
        Ok(Value::Str(text.to_string()))
    }
}

/// Split on commas that are not nested inside parentheses or braces.
pub(crate) fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (at, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(text[start..at].trim());
                start = at + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Str(s) => f.write_str(s),
            Value::Pair(a, b) => write!(f, "({a},{b})"),
            Value::IndexSet(s) => {
                write!(f, "{{")?;
                for (i, e) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
            Value::Term(t) => write!(f, "{t}"),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Nat(a), Value::Nat(b)) => a.cmp(b),
            (Value::Str(a), Value::Str(b)) => a.cmp(b),
            (Value::Pair(a1, b1), Value::Pair(a2, b2)) => {
                a1.cmp(a2).then_with(|| b1.cmp(b2))
            }
            (Value::IndexSet(a), Value::IndexSet(b)) => a.cmp(b),
            (Value::Term(a), Value::Term(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Value::nat(12).to_string(), "12");
        assert_eq!(Value::str("ab").to_string(), "ab");
        assert_eq!(Value::pair(Value::nat(1), Value::nat(2)).to_string(), "(1,2)");
        assert_eq!(Value::index_set([3, 0]).to_string(), "{0,3}");
    }

    #[test]
    fn json_round_trips() {
        let cases = [
            Value::nat(7),
            Value::str("x"),
            Value::pair(Value::nat(1), Value::str("y")),
            Value::index_set([0, 2]),
        ];
        for v in cases {
            let json = v.to_json();
            assert_eq!(Value::from_json(&json, None).unwrap(), v, "{json}");
        }
    }

    #[test]
    fn big_naturals_encode_as_decimal_strings() {
        let big: BigUint = "123456789012345678901234567890".parse().unwrap();
        let v = Value::Nat(big.clone());
        let json = v.to_json();
        assert_eq!(json, serde_json::json!({"nat": "123456789012345678901234567890"}));
        assert_eq!(Value::from_json(&json, None).unwrap(), Value::Nat(big));
    }

    #[test]
    fn text_form_round_trips_table_key_fragments() {
        assert_eq!(Value::parse_text("42").unwrap(), Value::nat(42));
        assert_eq!(Value::parse_text("x").unwrap(), Value::str("x"));
        assert_eq!(
            Value::parse_text("(1,(2,3))").unwrap(),
            Value::pair(Value::nat(1), Value::pair(Value::nat(2), Value::nat(3)))
        );
        assert_eq!(Value::parse_text("{0,3}").unwrap(), Value::index_set([0, 3]));
        assert_eq!(Value::parse_text("{}").unwrap(), Value::index_set([]));
    }

    #[test]
    fn split_top_level_respects_nesting() {
        assert_eq!(split_top_level("x,y"), ["x", "y"]);
        assert_eq!(split_top_level("(1,2),(3,4)"), ["(1,2)", "(3,4)"]);
        assert_eq!(split_top_level("{0,1},x"), ["{0,1}", "x"]);
    }

    #[test]
    fn canonical_order_sorts_within_and_across_kinds() {
        let mut values = vec![
            Value::str("b"),
            Value::nat(10),
            Value::nat(2),
            Value::str("a"),
            Value::pair(Value::nat(1), Value::nat(1)),
        ];
        values.sort();
        assert_eq!(
            values,
            vec![
                Value::nat(2),
                Value::nat(10),
                Value::str("a"),
                Value::str("b"),
                Value::pair(Value::nat(1), Value::nat(1)),
            ]
        );
    }
}
