//! Algebras: universes with interpreted operations, assignment prefixes, and
//! the reduction of a sequence by an admissible prefix.
//!
//! Four families cover the crate's needs: finite lookup tables, the naturals
//! under addition, variable words over a finite alphabet, and the pairing of
//! a single-binary algebra. Evaluation of an orderly term under an assignment
//! prefix is a small stack machine over the term's prefix tokens.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{enumerate_terms, AdmissiblePrefixes, TermBounds};
use crate::signature::Signature;
use crate::term::{AdmissiblePrefix, IndexBeyondPrefix, OrderlyTerm, Term, Token};
use crate::value::{split_top_level, Value};

/// Errors from building an algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("pairing needs an inner algebra with a single binary symbol")]
    WrongSignature,
    #[error("bad alphabet: {0}")]
    BadAlphabet(String),
    #[error("bad table: {0}")]
    BadTable(String),
    #[error(transparent)]
    Signature(#[from] crate::signature::SignatureError),
}

/// Errors from evaluating a term.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("symbol `{0}` is not interpreted by this algebra")]
    UnknownSymbol(String),
    #[error(transparent)]
    Index(#[from] IndexBeyondPrefix),
    #[error("operation `{op}` expected {expected}, got {got}")]
    TypeMismatch {
        op: String,
        expected: &'static str,
        got: String,
    },
    #[error("table for `{op}` has no entry at key `{key}`")]
    MissingEntry { op: String, key: String },
}

/// A value outside the universe, rejected at assignment construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("value `{value}` at position {position} is outside the universe")]
pub struct UniverseViolation {
    pub position: usize,
    pub value: Value,
}

/// A finite algebra given by explicit operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAlgebra {
    universe: Vec<Value>,
    ops: BTreeMap<String, OpTable>,
    signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct OpTable {
    arity: usize,
    map: BTreeMap<Vec<Value>, Value>,
}

impl TableAlgebra {
    /// Build from a universe and one `(name, arity, entries)` triple per
    /// operation. Entries may be partial; a missing key surfaces as a typed
    /// evaluation error.
    pub fn new(
        universe: Vec<Value>,
        ops: Vec<(String, usize, Vec<(Vec<Value>, Value)>)>,
    ) -> Result<TableAlgebra, AlgebraError> {
        let mut sorted = universe;
        sorted.sort();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(AlgebraError::BadTable("universe may not be empty".into()));
        }
        let signature = Signature::new(
            ops.iter().map(|(name, arity, _)| (name.clone(), *arity)),
        )?;
        let mut tables = BTreeMap::new();
        for (name, arity, entries) in ops {
            let mut map = BTreeMap::new();
            for (key, value) in entries {
                if key.len() != arity {
                    return Err(AlgebraError::BadTable(format!(
                        "key of length {} for `{name}` of arity {arity}",
                        key.len()
                    )));
                }
                for v in key.iter().chain([&value]) {
                    if sorted.binary_search(v).is_err() {
                        return Err(AlgebraError::BadTable(format!(
                            "`{v}` in the table for `{name}` is outside the universe"
                        )));
                    }
                }
                if map.insert(key, value.clone()).is_some() {
                    return Err(AlgebraError::BadTable(format!(
                        "duplicate key in the table for `{name}`"
                    )));
                }
            }
            tables.insert(name, OpTable { arity, map });
        }
        Ok(TableAlgebra { universe: sorted, ops: tables, signature })
    }

    /// The universe in canonical order.
    pub fn universe(&self) -> &[Value] {
        &self.universe
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    fn contains(&self, v: &Value) -> bool {
        self.universe.binary_search(v).is_ok()
    }

    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, EvalError> {
        let table = self
            .ops
            .get(op)
            .ok_or_else(|| EvalError::UnknownSymbol(op.to_string()))?;
        table.map.get(args).cloned().ok_or_else(|| EvalError::MissingEntry {
            op: op.to_string(),
            key: args.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
        })
    }

    /// JSON form, e.g. `{"universe":["x","y"],"ops":{"f":{"arity":2,"table":{"x,x":"y",…}}}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut ops = serde_json::Map::new();
        for (name, table) in &self.ops {
            let mut entries = serde_json::Map::new();
            for (key, value) in &table.map {
                let key_text = key.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                entries.insert(key_text, value.to_json());
            }
            ops.insert(
                name.clone(),
                serde_json::json!({ "arity": table.arity, "table": entries }),
            );
        }
        serde_json::json!({
            "universe": self.universe.iter().map(Value::to_json).collect::<Vec<_>>(),
            "ops": ops,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<TableAlgebra, String> {
        let universe = value
            .get("universe")
            .and_then(|u| u.as_array())
            .ok_or("table algebra needs a \"universe\" array")?
            .iter()
            .map(|v| Value::from_json(v, None))
            .collect::<Result<Vec<_>, _>>()?;
        let ops_obj = value
            .get("ops")
            .and_then(|o| o.as_object())
            .ok_or("table algebra needs an \"ops\" object")?;
        let mut ops = Vec::new();
        for (name, body) in ops_obj {
            let arity = body
                .get("arity")
                .and_then(|a| a.as_u64())
                .ok_or_else(|| format!("op `{name}` needs an integer \"arity\""))?
                as usize;
            let table = body
                .get("table")
                .and_then(|t| t.as_object())
                .ok_or_else(|| format!("op `{name}` needs a \"table\" object"))?;
            let mut entries = Vec::new();
            for (key_text, value_json) in table {
                let key = split_top_level(key_text)
                    .into_iter()
                    .map(Value::parse_text)
                    .collect::<Result<Vec<_>, _>>()?;
                entries.push((key, Value::from_json(value_json, None)?));
            }
            ops.push((name.clone(), arity, entries));
        }
        TableAlgebra::new(universe, ops).map_err(|e| e.to_string())
    }
}

/// An algebra: a universe of values together with interpreted operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    /// Finite algebra given by lookup tables.
    Table(TableAlgebra),
    /// The naturals `>= 1` under addition, with one binary symbol `f`.
    NatAdd,
    /// Words over an alphabet plus the designated letter `v`, each word
    /// containing at least one `v`. Operations: plain concatenation `cat`,
    /// and per letter `a` the substituted concatenations `catl_a`
    /// (substitute in the left word) and `catr_a` (substitute in the right).
    VariableWords { alphabet: Vec<char> },
    /// Pairs over a single-binary inner algebra; the operation keeps the
    /// inner symbol's name and acts per argument: the result's components
    /// are the inner operation applied inside the first and second argument
    /// pair respectively.
    Pair(Box<AlgebraSpec>),
}

impl AlgebraSpec {
    pub fn variable_words(letters: &str) -> Result<AlgebraSpec, AlgebraError> {
        let mut alphabet: Vec<char> = letters.chars().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.is_empty() {
            return Err(AlgebraError::BadAlphabet("alphabet may not be empty".into()));
        }
        for c in &alphabet {
            if *c == 'v' || !c.is_ascii_alphanumeric() {
                return Err(AlgebraError::BadAlphabet(format!(
                    "letter `{c}` (letters are ASCII alphanumerics other than `v`)"
                )));
            }
        }
        Ok(AlgebraSpec::VariableWords { alphabet })
    }

    /// Pair a single-binary algebra with itself.
    pub fn pair(inner: AlgebraSpec) -> Result<AlgebraSpec, AlgebraError> {
        if inner.signature().only_binary().is_none() {
            return Err(AlgebraError::WrongSignature);
        }
        Ok(AlgebraSpec::Pair(Box::new(inner)))
    }

    pub fn signature(&self) -> Signature {
        match self {
            AlgebraSpec::Table(t) => t.signature().clone(),
            AlgebraSpec::NatAdd => Signature::single_binary(),
            AlgebraSpec::VariableWords { alphabet } => {
                let mut symbols = vec![("cat".to_string(), 2)];
                for c in alphabet {
                    symbols.push((format!("catl_{c}"), 2));
                    symbols.push((format!("catr_{c}"), 2));
                }
                Signature::new(symbols).expect("validated alphabet")
            }
            AlgebraSpec::Pair(inner) => inner.signature(),
        }
    }

    /// Universe membership.
    pub fn contains(&self, v: &Value) -> bool {
        match self {
            AlgebraSpec::Table(t) => t.contains(v),
            AlgebraSpec::NatAdd => match v {
                Value::Nat(n) => *n >= BigUint::from(1u32),
                _ => false,
            },
            AlgebraSpec::VariableWords { alphabet } => match v {
                Value::Str(w) => {
                    !w.is_empty()
                        && w.contains('v')
                        && w.chars().all(|c| c == 'v' || alphabet.contains(&c))
                }
                _ => false,
            },
            AlgebraSpec::Pair(inner) => match v {
                Value::Pair(a, b) => inner.contains(a) && inner.contains(b),
                _ => false,
            },
        }
    }

    /// Apply one operation to argument values.
    pub fn apply(&self, op: &str, args: &[Value]) -> Result<Value, EvalError> {
        match self {
            AlgebraSpec::Table(t) => t.apply(op, args),
            AlgebraSpec::NatAdd => {
                if op != "f" {
                    return Err(EvalError::UnknownSymbol(op.to_string()));
                }
                match args {
                    [Value::Nat(a), Value::Nat(b)] => Ok(Value::Nat(a + b)),
                    _ => Err(type_mismatch(op, "two naturals", args)),
                }
            }
            AlgebraSpec::VariableWords { alphabet } => {
                let [a, b] = args else {
                    return Err(type_mismatch(op, "two words", args));
                };
                let (Value::Str(a), Value::Str(b)) = (a, b) else {
                    return Err(type_mismatch(op, "two words", args));
                };
                if op == "cat" {
                    return Ok(Value::Str(format!("{a}{b}")));
                }
                let substituted = |side: &str, letter: &str| -> Result<char, EvalError> {
                    let mut chars = letter.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) if alphabet.contains(&c) => Ok(c),
                        _ => Err(EvalError::UnknownSymbol(format!("{side}{letter}"))),
                    }
                };
                if let Some(letter) = op.strip_prefix("catl_") {
                    let c = substituted("catl_", letter)?;
                    return Ok(Value::Str(format!("{}{b}", a.replace('v', &c.to_string()))));
                }
                if let Some(letter) = op.strip_prefix("catr_") {
                    let c = substituted("catr_", letter)?;
                    return Ok(Value::Str(format!("{a}{}", b.replace('v', &c.to_string()))));
                }
                Err(EvalError::UnknownSymbol(op.to_string()))
            }
            AlgebraSpec::Pair(inner) => {
                let [a, b] = args else {
                    return Err(type_mismatch(op, "two pairs", args));
                };
                let (Value::Pair(a1, a2), Value::Pair(b1, b2)) = (a, b) else {
                    return Err(type_mismatch(op, "two pairs", args));
                };
                Ok(Value::pair(
                    inner.apply(op, &[(**a1).clone(), (**a2).clone()])?,
                    inner.apply(op, &[(**b1).clone(), (**b2).clone()])?,
                ))
            }
        }
    }

    /// Evaluate a term bottom-up under an assignment prefix.
    pub fn eval(&self, term: &Term, a: &AssignmentPrefix) -> Result<Value, EvalError> {
        let values = a.values();
        let mut stack: Vec<Value> = Vec::new();
        for token in term.tokens().iter().rev() {
            match token {
                Token::Var(i) => {
                    let v = values.get(*i as usize).ok_or(IndexBeyondPrefix {
                        index: *i,
                        len: values.len(),
                    })?;
                    stack.push(v.clone());
                }
                Token::Sym(sym) => {
                    // Reverse iteration pushes later arguments first, so
                    // popping yields them left to right.
                    let mut args = Vec::with_capacity(sym.arity);
                    for _ in 0..sym.arity {
                        args.push(stack.pop().expect("well-formed term"));
                    }
                    stack.push(self.apply(&sym.name, &args)?);
                }
            }
        }
        debug_assert_eq!(stack.len(), 1);
        Ok(stack.pop().expect("well-formed term"))
    }

    /// Parse a builtin selector: `nat-add`, `variable-words:<letters>`, or
    /// `pair:<inner selector>`.
    pub fn from_selector(selector: &str) -> Result<AlgebraSpec, String> {
        if selector == "nat-add" {
            return Ok(AlgebraSpec::NatAdd);
        }
        if let Some(letters) = selector.strip_prefix("variable-words:") {
            return AlgebraSpec::variable_words(letters).map_err(|e| e.to_string());
        }
        if let Some(inner) = selector.strip_prefix("pair:") {
            let inner = AlgebraSpec::from_selector(inner)?;
            return AlgebraSpec::pair(inner).map_err(|e| e.to_string());
        }
        Err(format!(
            "unknown algebra selector `{selector}` (expected nat-add, variable-words:<letters>, or pair:<inner>)"
        ))
    }

    /// Parse either a builtin selector string or a table-algebra JSON object.
    /// Pairing over a table is spelled `{"pair": <table object>}`.
    pub fn from_json(value: &serde_json::Value) -> Result<AlgebraSpec, String> {
        match value {
            serde_json::Value::String(s) => AlgebraSpec::from_selector(s),
            serde_json::Value::Object(obj) if obj.contains_key("pair") => {
                let inner = AlgebraSpec::from_json(&obj["pair"])?;
                AlgebraSpec::pair(inner).map_err(|e| e.to_string())
            }
            serde_json::Value::Object(_) => {
                Ok(AlgebraSpec::Table(TableAlgebra::from_json(value)?))
            }
            _ => Err("an algebra is a selector string or a table object".into()),
        }
    }

    /// JSON form: builtin algebras serialize as their selector strings,
    /// tables as objects.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AlgebraSpec::Table(t) => t.to_json(),
            AlgebraSpec::NatAdd => serde_json::json!("nat-add"),
            AlgebraSpec::VariableWords { alphabet } => {
                let letters: String = alphabet.iter().collect();
                serde_json::json!(format!("variable-words:{letters}"))
            }
            AlgebraSpec::Pair(inner) => match inner.to_json() {
                serde_json::Value::String(s) => serde_json::json!(format!("pair:{s}")),
                table => serde_json::json!({ "pair": table }),
            },
        }
    }

    /// Parse one value of this algebra's universe from JSON.
    pub fn value_from_json(&self, value: &serde_json::Value) -> Result<Value, String> {
        let parsed = Value::from_json(value, None)?;
        if self.contains(&parsed) {
            Ok(parsed)
        } else {
            Err(format!("`{parsed}` is outside the universe"))
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Table(t) => {
                write!(f, "table algebra over {} values", t.universe().len())
            }
            AlgebraSpec::NatAdd => write!(f, "naturals under addition"),
            AlgebraSpec::VariableWords { alphabet } => {
                let letters: String = alphabet.iter().collect();
                write!(f, "variable words over {{{letters}}}")
            }
            AlgebraSpec::Pair(inner) => write!(f, "paired {inner}"),
        }
    }
}

fn type_mismatch(op: &str, expected: &'static str, args: &[Value]) -> EvalError {
    EvalError::TypeMismatch {
        op: op.to_string(),
        expected,
        got: args.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
    }
}

/// A finite prefix of an assignment sequence: position `i` is the value of
/// `v_i`. Construction checks universe membership; evaluation beyond the
/// prefix fails with the offending index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssignmentPrefix {
    values: Vec<Value>,
}

impl AssignmentPrefix {
    pub fn new(alg: &AlgebraSpec, values: Vec<Value>) -> Result<AssignmentPrefix, UniverseViolation> {
        for (position, value) in values.iter().enumerate() {
            if !alg.contains(value) {
                return Err(UniverseViolation { position, value: value.clone() });
            }
        }
        Ok(AssignmentPrefix { values })
    }

    /// Convenience for naturals-under-addition assignments.
    pub fn nats(values: &[u64]) -> Result<AssignmentPrefix, UniverseViolation> {
        AssignmentPrefix::new(
            &AlgebraSpec::NatAdd,
            values.iter().map(|&n| Value::nat(n)).collect(),
        )
    }

    pub(crate) fn from_values_unchecked(values: Vec<Value>) -> AssignmentPrefix {
        AssignmentPrefix { values }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// JSON form: a bare array of entries in the algebra's value encoding.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.values.iter().map(Value::to_json).collect())
    }

    /// Accepts either the bare array or a `{"values":[…]}` wrapper.
    pub fn from_json(
        value: &serde_json::Value,
        alg: &AlgebraSpec,
    ) -> Result<AssignmentPrefix, String> {
        let items = value
            .as_array()
            .or_else(|| value.get("values").and_then(|v| v.as_array()))
            .ok_or("expected an array of assignment values")?;
        let values = items
            .iter()
            .map(|item| alg.value_from_json(item))
            .collect::<Result<Vec<_>, _>>()?;
        AssignmentPrefix::new(alg, values).map_err(|e| e.to_string())
    }
}

impl fmt::Display for AssignmentPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "⟩")
    }
}

/// Reduce an assignment by an admissible prefix: position `i` of the result
/// is the value of `witness[i]` under `a`. This is the sequence form of
/// reduction; reducing a whole valuation lives with the orderly views.
pub fn reduce_sequence(
    alg: &AlgebraSpec,
    a: &AssignmentPrefix,
    witness: &AdmissiblePrefix,
) -> Result<AssignmentPrefix, EvalError> {
    let mut values = Vec::with_capacity(witness.len());
    for t in witness.terms() {
        values.push(alg.eval(t, a)?);
    }
    // Operations map into the universe, so the result needs no re-check.
    Ok(AssignmentPrefix::from_values_unchecked(values))
}

/// The values of all orderly terms up to `max_size` under an assignment,
/// with the witnessing terms retained. This is the finite stand-in for the
/// set of values of all finite reductions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteReductionSet {
    entries: Vec<ReductionEntry>,
    values: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionEntry {
    pub term: OrderlyTerm,
    pub value: Value,
}

impl FiniteReductionSet {
    pub(crate) fn from_entries(entries: Vec<(OrderlyTerm, Value)>) -> FiniteReductionSet {
        let mut values: Vec<Value> = entries.iter().map(|(_, v)| v.clone()).collect();
        values.sort();
        values.dedup();
        FiniteReductionSet {
            entries: entries
                .into_iter()
                .map(|(term, value)| ReductionEntry { term, value })
                .collect(),
            values,
        }
    }

    /// Entries in canonical term order.
    pub fn entries(&self) -> &[ReductionEntry] {
        &self.entries
    }

    /// The distinct values in canonical order.
    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn contains_value(&self, v: &Value) -> bool {
        self.values.binary_search(v).is_ok()
    }
}

/// Values of every orderly term of size `<= max_size` over the assignment's
/// coverage (variable indices `0..a.len()`).
pub fn finite_reductions(
    alg: &AlgebraSpec,
    a: &AssignmentPrefix,
    max_size: usize,
) -> Result<FiniteReductionSet, EvalError> {
    if a.is_empty() {
        return Ok(FiniteReductionSet::from_entries(Vec::new()));
    }
    let bounds = TermBounds::new(max_size, (a.len() - 1) as u32);
    let mut entries = Vec::new();
    for term in enumerate_terms(&alg.signature(), &bounds) {
        let value = alg.eval(&term, a)?;
        entries.push((term, value));
    }
    Ok(FiniteReductionSet::from_entries(entries))
}

/// `<`-ordered `n`-tuples of reduction terms and their value tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleReductionSet {
    entries: Vec<TupleEntry>,
    tuples: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleEntry {
    pub terms: Vec<OrderlyTerm>,
    pub values: Vec<Value>,
}

impl TupleReductionSet {
    pub(crate) fn from_entries(entries: Vec<TupleEntry>) -> TupleReductionSet {
        let mut tuples: Vec<Vec<Value>> = entries.iter().map(|e| e.values.clone()).collect();
        tuples.sort();
        tuples.dedup();
        TupleReductionSet { entries, tuples }
    }

    pub fn entries(&self) -> &[TupleEntry] {
        &self.entries
    }

    /// The distinct value tuples in canonical order.
    pub fn tuples(&self) -> &[Vec<Value>] {
        &self.tuples
    }
}

/// Value tuples of all `t_1 < … < t_n` with each `t_i` of size `<= max_size`
/// over the assignment's coverage.
pub fn tuple_reductions(
    alg: &AlgebraSpec,
    a: &AssignmentPrefix,
    n: usize,
    max_size: usize,
) -> Result<TupleReductionSet, EvalError> {
    if a.is_empty() || n == 0 {
        return Ok(TupleReductionSet::from_entries(Vec::new()));
    }
    let bounds = TermBounds::new(max_size, (a.len() - 1) as u32);
    let terms = enumerate_terms(&alg.signature(), &bounds);
    let mut entries = Vec::new();
    for chain in AdmissiblePrefixes::new(terms, n) {
        let mut values = Vec::with_capacity(n);
        for t in chain.terms() {
            values.push(alg.eval(t, a)?);
        }
        entries.push(TupleEntry { terms: chain.terms().to_vec(), values });
    }
    Ok(TupleReductionSet::from_entries(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::OrderlyTerm;

    fn nat_assignment(values: &[u64]) -> AssignmentPrefix {
        AssignmentPrefix::nats(values).unwrap()
    }

    fn ot(text: &str, alg: &AlgebraSpec) -> OrderlyTerm {
        OrderlyTerm::parse(text, &alg.signature()).unwrap()
    }

    // === Evaluation ===

    #[test]
    fn nat_add_evaluates_sums() {
        let alg = AlgebraSpec::NatAdd;
        let a = nat_assignment(&[1, 2, 3, 4]);
        assert_eq!(alg.eval(&ot("f v0 v1", &alg), &a).unwrap(), Value::nat(3));
        assert_eq!(
            alg.eval(&ot("f f v0 v1 f v2 v3", &alg), &a).unwrap(),
            Value::nat(10)
        );
    }

    #[test]
    fn eval_beyond_prefix_names_the_index() {
        let alg = AlgebraSpec::NatAdd;
        let a = nat_assignment(&[1, 2]);
        let err = alg.eval(&ot("f v0 v5", &alg), &a).unwrap_err();
        assert_eq!(err, EvalError::Index(IndexBeyondPrefix { index: 5, len: 2 }));
    }

    #[test]
    fn nat_add_universe_excludes_zero() {
        assert!(AssignmentPrefix::nats(&[1, 0, 2]).is_err());
        let err = AssignmentPrefix::nats(&[0]).unwrap_err();
        assert_eq!(err.position, 0);
    }

    // === Sequence reduction (frozen example) ===

    #[test]
    fn reduce_sequence_on_nat_add() {
        let alg = AlgebraSpec::NatAdd;
        let a = nat_assignment(&[1, 2, 3, 4]);
        let witness =
            AdmissiblePrefix::parse(&["f v0 v1", "f v2 v3"], &alg.signature()).unwrap();
        let b = reduce_sequence(&alg, &a, &witness).unwrap();
        assert_eq!(b.values(), &[Value::nat(3), Value::nat(7)]);
    }

    // === Finite reduction sets, against a subset-sum oracle ===

    #[test]
    fn finite_reductions_of_two_values_at_size_3() {
        let alg = AlgebraSpec::NatAdd;
        let fr = finite_reductions(&alg, &nat_assignment(&[1, 2]), 3).unwrap();
        assert_eq!(fr.values(), &[Value::nat(1), Value::nat(2), Value::nat(3)]);
        // Term provenance is retained.
        assert_eq!(fr.entries().len(), 3);
        assert_eq!(fr.entries()[2].term.to_string(), "f v0 v1");
    }

    /// Under addition, the value set of orderly terms of size <= max_size is
    /// exactly the set of sums over nonempty index subsets of size at most
    /// (max_size+1)/2 — an independent oracle for the enumeration-based path.
    fn subset_sum_oracle(values: &[u64], max_size: usize) -> Vec<Value> {
        let max_vars = max_size.div_ceil(2);
        let mut sums = std::collections::BTreeSet::new();
        for mask in 1u32..(1 << values.len()) {
            let picked = mask.count_ones() as usize;
            if picked >= 1 && picked <= max_vars && 2 * picked - 1 <= max_size {
                let sum: u64 = values
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| *v)
                    .sum();
                sums.insert(Value::nat(sum));
            }
        }
        sums.into_iter().collect()
    }

    #[test]
    fn finite_reductions_match_subset_sum_oracle() {
        let alg = AlgebraSpec::NatAdd;
        for (values, max_size) in [
            (&[1u64, 2][..], 3),
            (&[1, 2, 3][..], 5),
            (&[2, 3, 5, 7][..], 7),
            (&[1, 1, 2, 8, 9][..], 5),
        ] {
            let fr = finite_reductions(&alg, &nat_assignment(values), max_size).unwrap();
            assert_eq!(
                fr.values(),
                subset_sum_oracle(values, max_size),
                "values {values:?} size {max_size}"
            );
        }
    }

    // === Tuple reduction sets ===

    #[test]
    fn tuple_reductions_of_pairs() {
        let alg = AlgebraSpec::NatAdd;
        let set = tuple_reductions(&alg, &nat_assignment(&[1, 2]), 2, 1).unwrap();
        assert_eq!(set.tuples(), &[vec![Value::nat(1), Value::nat(2)]]);
        let set = tuple_reductions(&alg, &nat_assignment(&[1, 2, 3]), 2, 1).unwrap();
        assert_eq!(
            set.tuples(),
            &[
                vec![Value::nat(1), Value::nat(2)],
                vec![Value::nat(1), Value::nat(3)],
                vec![Value::nat(2), Value::nat(3)],
            ]
        );
    }

    // === Variable words ===

    #[test]
    fn variable_word_operations() {
        let alg = AlgebraSpec::variable_words("a").unwrap();
        let sig = alg.signature();
        assert_eq!(
            sig.symbols().iter().map(|s| s.name.to_string()).collect::<Vec<_>>(),
            ["cat", "catl_a", "catr_a"]
        );
        let a = AssignmentPrefix::new(
            &alg,
            vec![Value::str("v"), Value::str("av")],
        )
        .unwrap();
        // Plain concatenation: v * av = vav.
        assert_eq!(alg.eval(&ot("cat v0 v1", &alg), &a).unwrap(), Value::str("vav"));
        let vv = AssignmentPrefix::new(&alg, vec![Value::str("v"), Value::str("v")]).unwrap();
        // Substitute right: v * v(a) = va; substitute left: v(a) * v = av.
        assert_eq!(alg.eval(&ot("catr_a v0 v1", &alg), &vv).unwrap(), Value::str("va"));
        assert_eq!(alg.eval(&ot("catl_a v0 v1", &alg), &vv).unwrap(), Value::str("av"));
    }

    #[test]
    fn variable_word_universe_requires_the_variable_letter() {
        let alg = AlgebraSpec::variable_words("ab").unwrap();
        assert!(alg.contains(&Value::str("abvb")));
        assert!(!alg.contains(&Value::str("ab"))); // no v
        assert!(!alg.contains(&Value::str("vc"))); // c outside alphabet
        assert!(!alg.contains(&Value::str("")));
        assert!(AlgebraSpec::variable_words("v").is_err());
        assert!(AlgebraSpec::variable_words("").is_err());
    }

    // === Pair algebra ===

    #[test]
    fn pair_algebra_acts_inside_each_argument() {
        let alg = AlgebraSpec::pair(AlgebraSpec::NatAdd).unwrap();
        let a = AssignmentPrefix::new(
            &alg,
            vec![
                Value::pair(Value::nat(1), Value::nat(2)),
                Value::pair(Value::nat(3), Value::nat(4)),
            ],
        )
        .unwrap();
        assert_eq!(
            alg.eval(&ot("f v0 v1", &alg), &a).unwrap(),
            Value::pair(Value::nat(3), Value::nat(7))
        );
    }

    #[test]
    fn pair_requires_single_binary_inner() {
        let words = AlgebraSpec::variable_words("a").unwrap();
        assert_eq!(AlgebraSpec::pair(words).unwrap_err(), AlgebraError::WrongSignature);
    }

    #[test]
    fn pair_of_nat_add_is_nowhere_associative_at_a_point() {
        // Frozen hand computation: with every coordinate 1,
        // h(h((1,1),(1,1)),(1,1)) = (4,2) but h((1,1),h((1,1),(1,1))) = (2,4).
        let alg = AlgebraSpec::pair(AlgebraSpec::NatAdd).unwrap();
        let one = Value::pair(Value::nat(1), Value::nat(1));
        let left = alg
            .apply("f", &[alg.apply("f", &[one.clone(), one.clone()]).unwrap(), one.clone()])
            .unwrap();
        let right = alg
            .apply("f", &[one.clone(), alg.apply("f", &[one.clone(), one.clone()]).unwrap()])
            .unwrap();
        assert_eq!(left, Value::pair(Value::nat(4), Value::nat(2)));
        assert_eq!(right, Value::pair(Value::nat(2), Value::nat(4)));
        assert_ne!(left, right);
    }

    // === Table algebras ===

    fn two_element_table() -> TableAlgebra {
        let x = Value::str("x");
        let y = Value::str("y");
        TableAlgebra::new(
            vec![x.clone(), y.clone()],
            vec![(
                "f".into(),
                2,
                vec![
                    (vec![x.clone(), x.clone()], y.clone()),
                    (vec![x.clone(), y.clone()], y.clone()),
                    (vec![y.clone(), x.clone()], x.clone()),
                    (vec![y.clone(), y.clone()], x.clone()),
                ],
            )],
        )
        .unwrap()
    }

    #[test]
    fn table_algebra_evaluates_and_reports_missing_entries() {
        let table = two_element_table();
        let alg = AlgebraSpec::Table(table);
        let a = AssignmentPrefix::new(&alg, vec![Value::str("x"), Value::str("y")]).unwrap();
        assert_eq!(alg.eval(&ot("f v0 v1", &alg), &a).unwrap(), Value::str("y"));

        let partial = TableAlgebra::new(
            vec![Value::str("x")],
            vec![("f".into(), 2, vec![])],
        )
        .unwrap();
        let alg = AlgebraSpec::Table(partial);
        let b = AssignmentPrefix::new(&alg, vec![Value::str("x"), Value::str("x")]).unwrap();
        let err = alg.eval(&ot("f v0 v1", &alg), &b).unwrap_err();
        assert!(matches!(err, EvalError::MissingEntry { .. }));
    }

    #[test]
    fn table_json_round_trip() {
        let table = two_element_table();
        let json = table.to_json();
        assert_eq!(
            json,
            serde_json::json!({
                "universe": ["x", "y"],
                "ops": {"f": {"arity": 2, "table": {
                    "x,x": "y", "x,y": "y", "y,x": "x", "y,y": "x"
                }}},
            })
        );
        assert_eq!(TableAlgebra::from_json(&json).unwrap(), table);
    }

    #[test]
    fn table_construction_rejects_out_of_universe_entries() {
        let err = TableAlgebra::new(
            vec![Value::str("x")],
            vec![("f".into(), 2, vec![(vec![Value::str("x"), Value::str("z")], Value::str("x"))])],
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::BadTable(_)));
    }

    // === Builtin selectors ===

    #[test]
    fn selector_parsing() {
        assert_eq!(AlgebraSpec::from_selector("nat-add").unwrap(), AlgebraSpec::NatAdd);
        assert!(matches!(
            AlgebraSpec::from_selector("variable-words:ab").unwrap(),
            AlgebraSpec::VariableWords { .. }
        ));
        assert!(matches!(
            AlgebraSpec::from_selector("pair:nat-add").unwrap(),
            AlgebraSpec::Pair(_)
        ));
        assert!(AlgebraSpec::from_selector("pair:variable-words:a").is_err());
        assert!(AlgebraSpec::from_selector("frobnicate").is_err());
    }

    // === Assignment JSON ===

    #[test]
    fn assignment_json_round_trip() {
        let alg = AlgebraSpec::NatAdd;
        let a = nat_assignment(&[1, 2, 3]);
        let json = a.to_json();
        assert_eq!(json, serde_json::json!([1, 2, 3]));
        assert_eq!(AssignmentPrefix::from_json(&json, &alg).unwrap(), a);
        // The wrapped form is accepted on input.
        let wrapped = serde_json::json!({"values": [1, 2, 3]});
        assert_eq!(AssignmentPrefix::from_json(&wrapped, &alg).unwrap(), a);

        let pair_alg = AlgebraSpec::pair(AlgebraSpec::NatAdd).unwrap();
        let b = AssignmentPrefix::new(
            &pair_alg,
            vec![Value::pair(Value::nat(1), Value::nat(2))],
        )
        .unwrap();
        assert_eq!(
            AssignmentPrefix::from_json(&serde_json::json!({"values": [[1, 2]]}), &pair_alg)
                .unwrap(),
            b
        );
        // Out-of-universe entries are rejected with context.
        assert!(AssignmentPrefix::from_json(&serde_json::json!({"values": [0]}), &alg).is_err());
    }
}
