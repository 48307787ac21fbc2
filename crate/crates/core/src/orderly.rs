//! Orderly algebra views: total valuations of orderly terms.
//!
//! A view assigns a value to every orderly term it covers. The interesting
//! views are *induced* — evaluate the term in an algebra under an assignment
//! prefix — and everything derived from them: *reduced* views precompose
//! with an admissible prefix, *sharp* views pair the values of a term's
//! doubled-index parts, and the *constant*, *index-set*, and *free* views
//! give degenerate and universal baselines. The checks at the bottom ask
//! when a view really is the valuation of an orderly algebra (congruence),
//! when that algebra is an orderly semigroup, and whether equal variable
//! sets force equal sides of a coloring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraSpec, AssignmentPrefix, EvalError, TableAlgebra};
use crate::coloring::{Coloring, ColoringError};
use crate::enumerate::{enumerate_terms, AdmissiblePrefixes, TermBounds};
use crate::sharp::{split_term, SharpError};
use crate::signature::Signature;
use crate::term::{AdmissiblePrefix, OrderlyTerm, Term};
use crate::value::Value;

/// Default bound on how many distinct values a reconstruction may collect.
pub const DEFAULT_UNIVERSE_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ViewError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Sharp(#[from] SharpError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("this check needs a signature with a single binary symbol")]
    NotSingleBinary,
}

/// How a view computes values.
#[derive(Clone, Debug)]
pub enum ViewKind {
    /// Evaluate terms in an algebra under an assignment prefix.
    Induced { algebra: Arc<AlgebraSpec>, assignment: AssignmentPrefix },
    /// Every term gets the same value.
    Constant { value: Value },
    /// A term's value is its set of variable indices.
    IndexSet,
    /// A term's value is the term itself.
    Free,
    /// Precompose the base view with a witness: the value of `t` is the
    /// base value of `t[witness]`. The witness may be shorter than
    /// requested when flattening truncated it; terms reaching past it fail
    /// at query time.
    Reduced { base: Arc<OrderlyAlgebraView>, witness: Vec<OrderlyTerm> },
    /// Pair the base values of a term's doubled-index parts.
    Sharp { base: Arc<OrderlyAlgebraView> },
}

/// A total valuation of orderly terms over a signature.
#[derive(Clone, Debug)]
pub struct OrderlyAlgebraView {
    kind: ViewKind,
    signature: Signature,
    overrides: BTreeMap<OrderlyTerm, Value>,
    memo: DashMap<OrderlyTerm, Value>,
}

impl OrderlyAlgebraView {
    pub fn induced(algebra: AlgebraSpec, assignment: AssignmentPrefix) -> OrderlyAlgebraView {
        let signature = algebra.signature();
        OrderlyAlgebraView {
            kind: ViewKind::Induced { algebra: Arc::new(algebra), assignment },
            signature,
            overrides: BTreeMap::new(),
            memo: DashMap::new(),
        }
    }

    pub fn constant(signature: Signature, value: Value) -> OrderlyAlgebraView {
        OrderlyAlgebraView {
            kind: ViewKind::Constant { value },
            signature,
            overrides: BTreeMap::new(),
            memo: DashMap::new(),
        }
    }

    pub fn index_set(signature: Signature) -> OrderlyAlgebraView {
        OrderlyAlgebraView {
            kind: ViewKind::IndexSet,
            signature,
            overrides: BTreeMap::new(),
            memo: DashMap::new(),
        }
    }

    pub fn free(signature: Signature) -> OrderlyAlgebraView {
        OrderlyAlgebraView {
            kind: ViewKind::Free,
            signature,
            overrides: BTreeMap::new(),
            memo: DashMap::new(),
        }
    }

    /// Reduce by a witness: the result values `t` as `self` values
    /// `t[witness]`. Reducing an already reduced view flattens the two
    /// witnesses into one by composition; entries whose composition would
    /// reach past the inner witness are dropped, so the flattened witness
    /// can be shorter than the requested one (queries past it fail with the
    /// offending index).
    pub fn reduce(&self, witness: &AdmissiblePrefix) -> OrderlyAlgebraView {
        let kind = match &self.kind {
            // Overrides sit between the outer and inner witness, so a view
            // carrying them is kept as an opaque base instead of flattened.
            ViewKind::Reduced { base, witness: inner } if self.overrides.is_empty() => {
                let mut flattened = Vec::with_capacity(witness.len());
                for t in witness.terms() {
                    match t.substitute_slice(inner) {
                        Ok(composed) => flattened.push(composed),
                        Err(_) => break,
                    }
                }
                ViewKind::Reduced { base: base.clone(), witness: flattened }
            }
            _ => ViewKind::Reduced {
                base: Arc::new(self.clone()),
                witness: witness.terms().to_vec(),
            },
        };
        OrderlyAlgebraView {
            kind,
            signature: self.signature.clone(),
            overrides: BTreeMap::new(),
            memo: DashMap::new(),
        }
    }

    /// The index-doubling view over this one. Only defined over a single
    /// binary symbol.
    pub fn sharp(&self) -> Result<OrderlyAlgebraView, SharpError> {
        if self.signature.only_binary().is_none() {
            return Err(SharpError::WrongSignature);
        }
        Ok(OrderlyAlgebraView {
            kind: ViewKind::Sharp { base: Arc::new(self.clone()) },
            signature: self.signature.clone(),
            overrides: BTreeMap::new(),
            memo: DashMap::new(),
        })
    }

    /// Pin the value of one term, shadowing whatever the view would
    /// compute. A deliberate fault-injection hook: checks downstream see
    /// the overridden value. Add overrides before deriving other views.
    pub fn with_override(mut self, term: OrderlyTerm, value: Value) -> OrderlyAlgebraView {
        self.memo.clear();
        self.overrides.insert(term, value);
        self
    }

    pub fn kind(&self) -> &ViewKind {
        &self.kind
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// The view's value at an orderly term.
    pub fn value(&self, t: &OrderlyTerm) -> Result<Value, ViewError> {
        if let Some(v) = self.overrides.get(t) {
            return Ok(v.clone());
        }
        // Cheap kinds are computed directly; the memo would cost as much
        // as the computation.
        match &self.kind {
            ViewKind::Constant { value } => return Ok(value.clone()),
            ViewKind::Free => return Ok(Value::Term(t.clone())),
            ViewKind::IndexSet => return Ok(Value::index_set(t.variables())),
            _ => {}
        }
        if let Some(v) = self.memo.get(t) {
            return Ok(v.clone());
        }
        let computed = match &self.kind {
            ViewKind::Induced { algebra, assignment } => algebra.eval(t, assignment)?,
            ViewKind::Reduced { base, witness } => {
                let substituted = t.substitute_slice(witness).map_err(EvalError::Index)?;
                base.value(&substituted)?
            }
            ViewKind::Sharp { base } => {
                let (x, y) = split_term(t, &self.signature)?;
                Value::pair(base.value(&x)?, base.value(&y)?)
            }
            ViewKind::Constant { .. } | ViewKind::Free | ViewKind::IndexSet => unreachable!(),
        };
        self.memo.insert(t.clone(), computed.clone());
        Ok(computed)
    }

    /// The values of `v_0 … v_len-1` as an assignment prefix. For an
    /// induced view this recovers (a prefix of) the inducing assignment;
    /// for a reduced view it is the reduced sequence.
    pub fn induced_sequence(&self, len: usize) -> Result<AssignmentPrefix, ViewError> {
        let mut values = Vec::with_capacity(len);
        for i in 0..len {
            values.push(self.value(&OrderlyTerm::variable(i as u32))?);
        }
        Ok(AssignmentPrefix::from_values_unchecked(values))
    }

    // === Checks ===

    /// Does the view respect value congruence? For every symbol and every
    /// pair of `<`-chains with equal value tuples, the applications must get
    /// equal values — exactly the condition for the view to be the
    /// valuation of an algebra on its values.
    pub fn check_congruence(&self, bounds: &TermBounds) -> Result<CongruenceReport, ViewError> {
        let terms = enumerate_terms(&self.signature, bounds);
        let mut checked = 0u64;
        let mut violations = Vec::new();
        for sym in self.signature.symbols() {
            let mut seen: BTreeMap<Vec<Value>, (Vec<OrderlyTerm>, Value)> = BTreeMap::new();
            for chain in AdmissiblePrefixes::new(terms.clone(), sym.arity) {
                let mut key = Vec::with_capacity(sym.arity);
                for t in chain.terms() {
                    key.push(self.value(t)?);
                }
                let args: Vec<&Term> = chain.terms().iter().map(|t| t.term()).collect();
                let applied = OrderlyTerm::new(Term::apply(sym, &args))
                    .expect("an application of a <-chain is orderly");
                let applied_value = self.value(&applied)?;
                checked += 1;
                match seen.get(&key) {
                    None => {
                        seen.insert(key, (chain.terms().to_vec(), applied_value));
                    }
                    Some((first_chain, first_value)) => {
                        if *first_value != applied_value {
                            violations.push(CongruenceViolation {
                                symbol: sym.name.to_string(),
                                values: key,
                                left: first_chain.clone(),
                                right: chain.terms().to_vec(),
                                left_value: first_value.clone(),
                                right_value: applied_value,
                            });
                        }
                    }
                }
            }
        }
        Ok(CongruenceReport { checked, violations })
    }

    /// Is the view an orderly semigroup? Two conditions over a single
    /// binary symbol: both bracketings of every `<`-chain of three terms
    /// agree, and any two terms with the same variable set get the same
    /// value.
    pub fn check_semigroup(&self, bounds: &TermBounds) -> Result<SemigroupReport, ViewError> {
        let f = self.signature.only_binary().ok_or(ViewError::NotSingleBinary)?;
        let terms = enumerate_terms(&self.signature, bounds);

        let mut associativity_checked = 0u64;
        let mut associativity_violations = Vec::new();
        for chain in AdmissiblePrefixes::new(terms.clone(), 3) {
            let [t1, t2, t3] = chain.terms() else { unreachable!() };
            let left = OrderlyTerm::new(Term::apply(
                f,
                &[&Term::apply(f, &[t1.term(), t2.term()]), t3.term()],
            ))
            .expect("chain applications are orderly");
            let right = OrderlyTerm::new(Term::apply(
                f,
                &[t1.term(), &Term::apply(f, &[t2.term(), t3.term()])],
            ))
            .expect("chain applications are orderly");
            let left_value = self.value(&left)?;
            let right_value = self.value(&right)?;
            associativity_checked += 1;
            if left_value != right_value {
                associativity_violations.push(AssociativityViolation {
                    chain: chain.terms().to_vec(),
                    left,
                    right,
                    left_value,
                    right_value,
                });
            }
        }

        let (variable_set_checked, variable_set_violations) =
            self.compare_by_variable_set(&terms, |value| Ok(value.clone()))?;

        Ok(SemigroupReport {
            associativity_checked,
            associativity_violations,
            variable_set_checked,
            variable_set_violations,
        })
    }

    /// Do equal variable sets force the same side of the coloring? The
    /// necessary condition for any reduction of the view to be homogeneous.
    pub fn check_prehomogeneous(
        &self,
        coloring: &Coloring,
        bounds: &TermBounds,
    ) -> Result<PrehomogeneousReport, ViewError> {
        let terms = enumerate_terms(&self.signature, bounds);
        let (checked, violations) =
            self.compare_by_variable_set(&terms, |value| Ok(coloring.accepts(value)?))?;
        Ok(PrehomogeneousReport { checked, violations })
    }

    fn compare_by_variable_set<K, E>(
        &self,
        terms: &[OrderlyTerm],
        key: K,
    ) -> Result<(u64, Vec<VariableSetViolation>), ViewError>
    where
        K: Fn(&Value) -> Result<E, ViewError>,
        E: PartialEq,
    {
        let mut groups: BTreeMap<Vec<u32>, (OrderlyTerm, Value, E)> = BTreeMap::new();
        let mut checked = 0u64;
        let mut violations = Vec::new();
        for t in terms {
            let value = self.value(t)?;
            let k = key(&value)?;
            let vars: Vec<u32> = t.variables().into_iter().collect();
            checked += 1;
            match groups.get(&vars) {
                None => {
                    groups.insert(vars, (t.clone(), value, k));
                }
                Some((first, first_value, first_key)) => {
                    if *first_key != k {
                        violations.push(VariableSetViolation {
                            variables: vars,
                            left: first.clone(),
                            right: t.clone(),
                            left_value: first_value.clone(),
                            right_value: value,
                        });
                    }
                }
            }
        }
        Ok((checked, violations))
    }

    /// Tabulate the view back into a finite algebra. Values of enumerated
    /// terms form the universe, applications over `<`-chains fill the
    /// tables, and unrealized argument tuples get `default` (the first
    /// universe value when unspecified) so the result is total. Fails if
    /// the view maps some value tuple to two different values, or if the
    /// universe outgrows `max_universe`.
    pub fn reconstruct_algebra(
        &self,
        bounds: &TermBounds,
        default: Option<Value>,
        max_universe: usize,
    ) -> Result<TableAlgebra, ReconstructError> {
        let terms = enumerate_terms(&self.signature, bounds);
        let mut universe: Vec<Value> = Vec::new();
        let add_to_universe = |universe: &mut Vec<Value>, v: &Value| -> Result<(), ReconstructError> {
            if let Err(at) = universe.binary_search(v) {
                universe.insert(at, v.clone());
                if universe.len() > max_universe {
                    return Err(ReconstructError::UniverseOverflow { cap: max_universe });
                }
            }
            Ok(())
        };
        for t in &terms {
            let v = self.value(t)?;
            add_to_universe(&mut universe, &v)?;
        }

        let mut ops: Vec<(String, usize, BTreeMap<Vec<Value>, Value>)> = Vec::new();
        for sym in self.signature.symbols() {
            let mut table: BTreeMap<Vec<Value>, Value> = BTreeMap::new();
            for chain in AdmissiblePrefixes::new(terms.clone(), sym.arity) {
                let mut key = Vec::with_capacity(sym.arity);
                for t in chain.terms() {
                    key.push(self.value(t)?);
                }
                let args: Vec<&Term> = chain.terms().iter().map(|t| t.term()).collect();
                let applied = OrderlyTerm::new(Term::apply(sym, &args))
                    .expect("an application of a <-chain is orderly");
                let value = self.value(&applied)?;
                add_to_universe(&mut universe, &value)?;
                match table.get(&key) {
                    None => {
                        table.insert(key, value);
                    }
                    Some(existing) if *existing == value => {}
                    Some(existing) => {
                        return Err(ReconstructError::NotCongruent {
                            symbol: sym.name.to_string(),
                            values: key,
                            left_value: existing.clone(),
                            right_value: value,
                        });
                    }
                }
            }
            ops.push((sym.name.to_string(), sym.arity, table));
        }

        let default = match default {
            Some(v) => {
                if universe.binary_search(&v).is_err() {
                    return Err(ReconstructError::BadDefault { value: v });
                }
                v
            }
            None => universe[0].clone(),
        };

        // Totalize: every argument tuple over the universe gets an entry.
        let mut op_entries = Vec::new();
        for (name, arity, mut table) in ops {
            let mut stack = vec![Vec::new()];
            while let Some(tuple) = stack.pop() {
                if tuple.len() == arity {
                    table.entry(tuple).or_insert_with(|| default.clone());
                    continue;
                }
                for v in universe.iter().rev() {
                    let mut next = tuple.clone();
                    next.push(v.clone());
                    stack.push(next);
                }
            }
            op_entries.push((name, arity, table.into_iter().collect::<Vec<_>>()));
        }
        Ok(TableAlgebra::new(universe, op_entries)?)
    }

    // === JSON ===

    pub fn to_json(&self) -> serde_json::Value {
        let mut json = match &self.kind {
            ViewKind::Induced { algebra, assignment } => serde_json::json!({
                "kind": "induced",
                "algebra": algebra.to_json(),
                "assignment": assignment.to_json(),
            }),
            ViewKind::Constant { value } => serde_json::json!({
                "kind": "constant",
                "signature": self.signature.to_json(),
                "value": value.to_json(),
            }),
            ViewKind::IndexSet => serde_json::json!({
                "kind": "index-set",
                "signature": self.signature.to_json(),
            }),
            ViewKind::Free => serde_json::json!({
                "kind": "free",
                "signature": self.signature.to_json(),
            }),
            ViewKind::Reduced { base, witness } => serde_json::json!({
                "kind": "reduced",
                "base": base.to_json(),
                "witness": witness.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            }),
            ViewKind::Sharp { base } => serde_json::json!({
                "kind": "sharp",
                "base": base.to_json(),
            }),
        };
        if !self.overrides.is_empty() {
            json["overrides"] = serde_json::json!(self
                .overrides
                .iter()
                .map(|(t, v)| serde_json::json!({"term": t.to_string(), "value": v.to_json()}))
                .collect::<Vec<_>>());
        }
        json
    }

    pub fn from_json(value: &serde_json::Value) -> Result<OrderlyAlgebraView, String> {
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or("a view needs a \"kind\" field")?;
        let signature_of = |value: &serde_json::Value| -> Result<Signature, String> {
            Signature::from_json(value.get("signature").ok_or("this view kind needs a \"signature\"")?)
        };
        let mut view = match kind {
            "induced" => {
                let algebra = AlgebraSpec::from_json(
                    value.get("algebra").ok_or("induced view needs an \"algebra\"")?,
                )?;
                let assignment = AssignmentPrefix::from_json(
                    value.get("assignment").ok_or("induced view needs an \"assignment\"")?,
                    &algebra,
                )?;
                OrderlyAlgebraView::induced(algebra, assignment)
            }
            "constant" => {
                let signature = signature_of(value)?;
                let constant = Value::from_json(
                    value.get("value").ok_or("constant view needs a \"value\"")?,
                    Some(&signature),
                )?;
                OrderlyAlgebraView::constant(signature, constant)
            }
            "index-set" => OrderlyAlgebraView::index_set(signature_of(value)?),
            "free" => OrderlyAlgebraView::free(signature_of(value)?),
            "reduced" => {
                let base = OrderlyAlgebraView::from_json(
                    value.get("base").ok_or("reduced view needs a \"base\"")?,
                )?;
                let texts: Vec<String> = value
                    .get("witness")
                    .and_then(|w| w.as_array())
                    .ok_or("reduced view needs a \"witness\" array")?
                    .iter()
                    .map(|t| t.as_str().map(str::to_string).ok_or("witness entries are term strings"))
                    .collect::<Result<_, _>>()?;
                let signature = base.signature.clone();
                let mut witness = Vec::with_capacity(texts.len());
                for text in &texts {
                    witness.push(
                        OrderlyTerm::parse(text, &signature).map_err(|e| e.to_string())?,
                    );
                }
                for pair in witness.windows(2) {
                    if !pair[0].precedes(&pair[1]) {
                        return Err(format!(
                            "witness entries out of order: `{}` does not precede `{}`",
                            pair[0], pair[1]
                        ));
                    }
                }
                OrderlyAlgebraView {
                    kind: ViewKind::Reduced { base: Arc::new(base), witness },
                    signature,
                    overrides: BTreeMap::new(),
                    memo: DashMap::new(),
                }
            }
            "sharp" => {
                let base = OrderlyAlgebraView::from_json(
                    value.get("base").ok_or("sharp view needs a \"base\"")?,
                )?;
                base.sharp().map_err(|e| e.to_string())?
            }
            other => return Err(format!("unknown view kind `{other}`")),
        };
        if let Some(overrides) = value.get("overrides") {
            let entries = overrides.as_array().ok_or("\"overrides\" is an array")?;
            for entry in entries {
                let term_text = entry
                    .get("term")
                    .and_then(|t| t.as_str())
                    .ok_or("an override needs a \"term\" string")?;
                let term = OrderlyTerm::parse(term_text, &view.signature)
                    .map_err(|e| e.to_string())?;
                let v = Value::from_json(
                    entry.get("value").ok_or("an override needs a \"value\"")?,
                    Some(&view.signature),
                )?;
                view = view.with_override(term, v);
            }
        }
        Ok(view)
    }
}

impl fmt::Display for OrderlyAlgebraView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViewKind::Induced { algebra, assignment } => {
                write!(f, "induced by {assignment} over {algebra}")
            }
            ViewKind::Constant { value } => write!(f, "constant {value}"),
            ViewKind::IndexSet => write!(f, "index sets over {}", self.signature),
            ViewKind::Free => write!(f, "free over {}", self.signature),
            ViewKind::Reduced { base, witness } => {
                write!(f, "({base}) reduced by ⟨")?;
                for (i, t) in witness.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "⟩")
            }
            ViewKind::Sharp { base } => write!(f, "sharp of ({base})"),
        }
    }
}

/// Outcome of the congruence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub checked: u64,
    pub violations: Vec<CongruenceViolation>,
}

impl CongruenceReport {
    pub fn is_congruent(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceViolation {
    pub symbol: String,
    pub values: Vec<Value>,
    pub left: Vec<OrderlyTerm>,
    pub right: Vec<OrderlyTerm>,
    pub left_value: Value,
    pub right_value: Value,
}

/// Outcome of the orderly semigroup check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupReport {
    pub associativity_checked: u64,
    pub associativity_violations: Vec<AssociativityViolation>,
    pub variable_set_checked: u64,
    pub variable_set_violations: Vec<VariableSetViolation>,
}

impl SemigroupReport {
    pub fn is_semigroup(&self) -> bool {
        self.associativity_violations.is_empty() && self.variable_set_violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityViolation {
    pub chain: Vec<OrderlyTerm>,
    pub left: OrderlyTerm,
    pub right: OrderlyTerm,
    pub left_value: Value,
    pub right_value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableSetViolation {
    pub variables: Vec<u32>,
    pub left: OrderlyTerm,
    pub right: OrderlyTerm,
    pub left_value: Value,
    pub right_value: Value,
}

/// Outcome of the pre-homogeneity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrehomogeneousReport {
    pub checked: u64,
    pub violations: Vec<VariableSetViolation>,
}

impl PrehomogeneousReport {
    pub fn is_prehomogeneous(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error(transparent)]
    View(#[from] ViewError),
    #[error("reconstruction universe grew past the cap of {cap} distinct values")]
    UniverseOverflow { cap: usize },
    #[error("view is not a congruence: `{symbol}` at values {values:?} yields both `{left_value}` and `{right_value}`")]
    NotCongruent {
        symbol: String,
        values: Vec<Value>,
        left_value: Value,
        right_value: Value,
    },
    #[error("default value `{value}` is outside the reconstructed universe")]
    BadDefault { value: Value },
    #[error(transparent)]
    Table(#[from] AlgebraError),
}
