//! Colorings: two-sided partitions of values used by the homogeneity checks
//! and searches. A coloring accepts or rejects a value; a reduction is
//! homogeneous for it when every reduced value lands on the same side.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::term::Token;
use crate::value::Value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring expected {expected}, got `{got}`")]
    WrongKind { expected: &'static str, got: String },
    #[error("residue coloring needs a modulus >= 2")]
    BadModulus,
    #[error("tuple component {index} out of range for tuples of length {len}")]
    ComponentOutOfRange { index: usize, len: usize },
}

/// A two-sided coloring of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coloring {
    /// Accept exactly the listed values.
    Member { values: BTreeSet<Value> },
    /// Accept naturals whose residue modulo `modulus` is listed.
    Residue { modulus: u64, accept: BTreeSet<u64> },
    /// Apply an inner coloring to one component of a pair value.
    PairComponent { component: usize, inner: Box<Coloring> },
    /// Accept term values where the count of `symbol` occurrences before
    /// the first variable has the given parity.
    LeadingParity { symbol: String, parity: Parity },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn matches(self, count: usize) -> bool {
        (count % 2 == 0) == (self == Parity::Even)
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Coloring {
    pub fn member<I: IntoIterator<Item = Value>>(values: I) -> Coloring {
        Coloring::Member { values: values.into_iter().collect() }
    }

    pub fn residue<I: IntoIterator<Item = u64>>(
        modulus: u64,
        accept: I,
    ) -> Result<Coloring, ColoringError> {
        if modulus < 2 {
            return Err(ColoringError::BadModulus);
        }
        Ok(Coloring::Residue {
            modulus,
            accept: accept.into_iter().map(|r| r % modulus).collect(),
        })
    }

    pub fn pair_component(component: usize, inner: Coloring) -> Result<Coloring, ColoringError> {
        if component > 1 {
            return Err(ColoringError::ComponentOutOfRange { index: component, len: 2 });
        }
        Ok(Coloring::PairComponent { component, inner: Box::new(inner) })
    }

    pub fn leading_parity(symbol: impl Into<String>, parity: Parity) -> Coloring {
        Coloring::LeadingParity { symbol: symbol.into(), parity }
    }

    /// Which side of the coloring the value falls on.
    pub fn accepts(&self, value: &Value) -> Result<bool, ColoringError> {
        match self {
            Coloring::Member { values } => Ok(values.contains(value)),
            Coloring::Residue { modulus, accept } => match value {
                Value::Nat(n) => {
                    let r = n % BigUint::from(*modulus);
                    // The residue fits u64 because the modulus does.
                    let r = u64::try_from(&r).expect("residue below a u64 modulus");
                    Ok(accept.contains(&r))
                }
                other => Err(ColoringError::WrongKind {
                    expected: "a natural",
                    got: other.to_string(),
                }),
            },
            Coloring::PairComponent { component, inner } => match value {
                Value::Pair(a, b) => inner.accepts(if *component == 0 { a } else { b }),
                other => Err(ColoringError::WrongKind {
                    expected: "a pair",
                    got: other.to_string(),
                }),
            },
            Coloring::LeadingParity { symbol, parity } => match value {
                Value::Term(t) => {
                    let leading = t
                        .tokens()
                        .iter()
                        .take_while(|tok| matches!(tok, Token::Sym(_)))
                        .filter(|tok| matches!(tok, Token::Sym(s) if *s.name == **symbol))
                        .count();
                    Ok(parity.matches(leading))
                }
                other => Err(ColoringError::WrongKind {
                    expected: "a term value",
                    got: other.to_string(),
                }),
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Coloring::Member { values } => serde_json::json!({
                "kind": "member",
                "set": values.iter().map(Value::to_json).collect::<Vec<_>>(),
            }),
            Coloring::Residue { modulus, accept } => serde_json::json!({
                "kind": "residue",
                "modulus": modulus,
                "accept": accept.iter().collect::<Vec<_>>(),
            }),
            Coloring::PairComponent { component, inner } => serde_json::json!({
                "kind": "pair-component",
                "component": component,
                "inner": inner.to_json(),
            }),
            Coloring::LeadingParity { symbol, parity } => serde_json::json!({
                "kind": "leading-parity",
                "symbol": symbol,
                "parity": parity.name(),
            }),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Coloring, String> {
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or("a coloring needs a \"kind\" field")?;
        match kind {
            "member" => {
                let values = value
                    .get("set")
                    .and_then(|v| v.as_array())
                    .ok_or("member coloring needs a \"set\" array")?
                    .iter()
                    .map(|v| Value::from_json(v, None))
                    .collect::<Result<BTreeSet<_>, _>>()?;
                Ok(Coloring::Member { values })
            }
            "residue" => {
                let modulus = value
                    .get("modulus")
                    .and_then(|m| m.as_u64())
                    .ok_or("residue coloring needs an integer \"modulus\"")?;
                let accept = value
                    .get("accept")
                    .and_then(|a| a.as_array())
                    .ok_or("residue coloring needs an \"accept\" array")?
                    .iter()
                    .map(|r| r.as_u64().ok_or("accepted residues are integers"))
                    .collect::<Result<Vec<_>, _>>()?;
                Coloring::residue(modulus, accept).map_err(|e| e.to_string())
            }
            "pair-component" => {
                let component = value
                    .get("component")
                    .and_then(|c| c.as_u64())
                    .ok_or("pair-component coloring needs a \"component\" of 0 or 1")?
                    as usize;
                let inner = Coloring::from_json(
                    value.get("inner").ok_or("pair-component coloring needs an \"inner\"")?,
                )?;
                Coloring::pair_component(component, inner).map_err(|e| e.to_string())
            }
            "leading-parity" => {
                let symbol = value
                    .get("symbol")
                    .and_then(|s| s.as_str())
                    .ok_or("leading-parity coloring needs a \"symbol\"")?;
                let parity = match value.get("parity").and_then(|p| p.as_str()) {
                    Some("even") => Parity::Even,
                    Some("odd") => Parity::Odd,
                    _ => return Err("leading-parity coloring needs \"parity\": \"even\" or \"odd\"".into()),
                };
                Ok(Coloring::leading_parity(symbol, parity))
            }
            other => Err(format!("unknown coloring kind `{other}`")),
        }
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// A two-sided coloring of value tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleColoring {
    /// Color a tuple by one component's value.
    Component { index: usize, coloring: Coloring },
}

impl TupleColoring {
    pub fn component(index: usize, coloring: Coloring) -> TupleColoring {
        TupleColoring::Component { index, coloring }
    }

    pub fn accepts(&self, tuple: &[Value]) -> Result<bool, ColoringError> {
        match self {
            TupleColoring::Component { index, coloring } => {
                let v = tuple.get(*index).ok_or(ColoringError::ComponentOutOfRange {
                    index: *index,
                    len: tuple.len(),
                })?;
                coloring.accepts(v)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            TupleColoring::Component { index, coloring } => serde_json::json!({
                "kind": "component",
                "index": index,
                "coloring": coloring.to_json(),
            }),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<TupleColoring, String> {
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or("a tuple coloring needs a \"kind\" field")?;
        match kind {
            "component" => {
                let index = value
                    .get("index")
                    .and_then(|i| i.as_u64())
                    .ok_or("component coloring needs an integer \"index\"")?
                    as usize;
                let coloring = Coloring::from_json(
                    value.get("coloring").ok_or("component coloring needs a \"coloring\"")?,
                )?;
                Ok(TupleColoring::Component { index, coloring })
            }
            other => Err(format!("unknown tuple coloring kind `{other}`")),
        }
    }
}

impl Serialize for TupleColoring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}
