//! Bounded searches for homogeneous reductions.
//!
//! Fix a view, a coloring, and a prefix length `k`. A *witness* is an
//! admissible prefix of `k` entries; reducing the view by it and evaluating
//! every probe term — orderly, size at most `fr_size`, variables among
//! `v_0 … v_k-1` — yields a finite stand-in for the reduction's value set.
//! The witness is *homogeneous* when all probe values land on one side of
//! the coloring, and *constant* when they are all equal. The searches scan
//! witnesses whose entries fit the configured bounds in canonical order and
//! report the first homogeneous one together with the certifying finite
//! reduction set.
//!
//! The scan fans out over chunks sharing a first entry. Chunks run in
//! parallel on the ambient thread pool, but the reported witness is the
//! canonically first one regardless of thread count: a later chunk's find
//! only stands once every earlier chunk has been exhausted, and a timeout
//! in an earlier chunk demotes the whole run to [`SearchOutcome::TimedOut`].

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{FiniteReductionSet, TupleEntry, TupleReductionSet};
use crate::coloring::{Coloring, Parity, TupleColoring};
use crate::enumerate::{enumerate_terms, AdmissiblePrefixes, TermBounds};
use crate::orderly::{OrderlyAlgebraView, ViewError};
use crate::term::{AdmissiblePrefix, OrderlyTerm, Term};
use crate::value::Value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("tuple searches need tuples of at least one entry")]
    EmptyTuple,
    #[error("tuple coloring component {index} is out of range for {n}-tuples")]
    ComponentOutOfRange { index: usize, n: usize },
    #[error(
        "the view maps terms of both parities to `{value}`: \
         `{even}` and `{odd}`"
    )]
    NotInjective { value: String, even: OrderlyTerm, odd: OrderlyTerm },
    #[error(transparent)]
    View(#[from] ViewError),
}

/// Bounds for one search run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Witness length `k`. Probes use variables `v_0 … v_k-1`.
    pub prefix_length: usize,
    /// Largest size of a witness entry.
    pub max_term_size: usize,
    /// Largest variable index in a witness entry.
    pub max_var_index: u32,
    /// Largest probe size; homogeneity is judged over all probes up to it.
    pub fr_size: usize,
    /// Wall-clock budget; exceeding it ends the run as timed out.
    pub time_budget: Option<Duration>,
}

impl SearchConfig {
    pub fn new(
        prefix_length: usize,
        max_term_size: usize,
        max_var_index: u32,
        fr_size: usize,
    ) -> SearchConfig {
        SearchConfig { prefix_length, max_term_size, max_var_index, fr_size, time_budget: None }
    }

    pub fn with_time_budget(mut self, budget: Duration) -> SearchConfig {
        self.time_budget = Some(budget);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "prefix_length": self.prefix_length,
            "max_term_size": self.max_term_size,
            "max_var_index": self.max_var_index,
            "fr_size": self.fr_size,
            "time_budget_ms": self.time_budget.map(|d| d.as_millis() as u64),
        })
    }
}

/// Which side of the coloring a homogeneous witness lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Every probe value is accepted by the coloring.
    Contained,
    /// Every probe value is rejected by the coloring.
    Disjoint,
    /// Every probe value is the same (constant searches only).
    Constant,
}

/// Work done before the search ended without a find.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub prefixes_examined: u64,
    pub probes_examined: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.prefixes_examined += other.prefixes_examined;
        self.probes_examined += other.probes_examined;
    }
}

/// Result of a scalar search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    Found { witness: AdmissiblePrefix, side: Side, certificate: FiniteReductionSet },
    Exhausted { stats: SearchStats },
    TimedOut { stats: SearchStats },
}

/// Result of a tuple search; the certificate records value tuples of
/// `<`-ordered probe chains instead of single probe values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TupleSearchOutcome {
    Found { witness: AdmissiblePrefix, side: Side, certificate: TupleReductionSet },
    Exhausted { stats: SearchStats },
    TimedOut { stats: SearchStats },
}

enum RawOutcome<C> {
    Found { witness: AdmissiblePrefix, side: Side, certificate: C },
    Exhausted(SearchStats),
    TimedOut(SearchStats),
}

enum Chunk<C> {
    Found { witness: AdmissiblePrefix, side: Side, certificate: C, stats: SearchStats },
    Exhausted(SearchStats),
    TimedOut(SearchStats),
}

/// Fan the witness stream out by first entry and run `examine` on each
/// reduced view. Chunks keep canonical order internally; the combination
/// step restores it globally.
fn drive<C: Send>(
    view: &OrderlyAlgebraView,
    config: &SearchConfig,
    examine: &(impl Fn(
        &OrderlyAlgebraView,
        &mut SearchStats,
    ) -> Result<Option<(Side, C)>, SearchError>
          + Sync),
) -> Result<RawOutcome<C>, SearchError> {
    if config.prefix_length == 0 {
        return Ok(RawOutcome::Exhausted(SearchStats::default()));
    }
    let pool = enumerate_terms(
        view.signature(),
        &TermBounds::new(config.max_term_size, config.max_var_index),
    );
    let stream = AdmissiblePrefixes::new(pool, config.prefix_length);
    let chunk_count = stream.term_list().len();
    let deadline = config.time_budget.map(|b| Instant::now() + b);
    let best_found = AtomicU64::new(u64::MAX);

    let chunks: Vec<Chunk<C>> = (0..chunk_count)
        .into_par_iter()
        .map(|i| -> Result<Chunk<C>, SearchError> {
            let mut stats = SearchStats::default();
            for witness in stream.with_first(i) {
                // An earlier chunk has already found a witness; whatever
                // this chunk would find can no longer be the first.
                if (best_found.load(Ordering::Relaxed) as usize) < i {
                    break;
                }
                if deadline.is_some_and(|d| Instant::now() >= d) {
                    return Ok(Chunk::TimedOut(stats));
                }
                stats.prefixes_examined += 1;
                let reduced = view.reduce(&witness);
                if let Some((side, certificate)) = examine(&reduced, &mut stats)? {
                    best_found.fetch_min(i as u64, Ordering::Relaxed);
                    return Ok(Chunk::Found { witness, side, certificate, stats });
                }
            }
            Ok(Chunk::Exhausted(stats))
        })
        .collect::<Result<_, _>>()?;

    let mut total = SearchStats::default();
    let mut found: Option<(usize, AdmissiblePrefix, Side, C)> = None;
    let mut timed_out_at: Option<usize> = None;
    for (i, chunk) in chunks.into_iter().enumerate() {
        match chunk {
            Chunk::Found { witness, side, certificate, stats } => {
                total.absorb(&stats);
                if found.is_none() {
                    found = Some((i, witness, side, certificate));
                }
            }
            Chunk::Exhausted(stats) => total.absorb(&stats),
            Chunk::TimedOut(stats) => {
                total.absorb(&stats);
                timed_out_at.get_or_insert(i);
            }
        }
    }
    // A find stands only when no earlier chunk was cut off: otherwise the
    // canonically first witness may sit in the unfinished part.
    if let Some((i, witness, side, certificate)) = found {
        if timed_out_at.is_none_or(|t| t > i) {
            return Ok(RawOutcome::Found { witness, side, certificate });
        }
    }
    if timed_out_at.is_some() {
        Ok(RawOutcome::TimedOut(total))
    } else {
        Ok(RawOutcome::Exhausted(total))
    }
}

fn probe_terms(view: &OrderlyAlgebraView, config: &SearchConfig) -> Vec<OrderlyTerm> {
    enumerate_terms(
        view.signature(),
        &TermBounds::new(config.fr_size, config.prefix_length.saturating_sub(1) as u32),
    )
}

/// Sweep all probes in one reduced view, classifying each value with `key`.
/// Returns the common key and the full entry list if every probe agrees,
/// `None` at the first disagreement (or when there are no probes at all).
fn sweep<K: PartialEq>(
    reduced: &OrderlyAlgebraView,
    probes: &[OrderlyTerm],
    stats: &mut SearchStats,
    key: impl Fn(&Value) -> Result<K, SearchError>,
) -> Result<Option<(K, Vec<(OrderlyTerm, Value)>)>, SearchError> {
    let mut entries = Vec::with_capacity(probes.len());
    let mut common: Option<K> = None;
    for probe in probes {
        let value = reduced.value(probe).map_err(SearchError::View)?;
        stats.probes_examined += 1;
        let k = key(&value)?;
        match &common {
            None => common = Some(k),
            Some(prev) if *prev != k => return Ok(None),
            Some(_) => {}
        }
        entries.push((probe.clone(), value));
    }
    Ok(common.map(|k| (k, entries)))
}

/// First witness within the configured bounds whose finite reduction set
/// lies entirely on one side of the coloring.
pub fn find_homogeneous_reduction(
    view: &OrderlyAlgebraView,
    coloring: &Coloring,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let probes = probe_terms(view, config);
    let raw = drive(view, config, &|reduced, stats| {
        let swept = sweep(reduced, &probes, stats, |v| {
            coloring.accepts(v).map_err(|e| SearchError::View(e.into()))
        })?;
        Ok(swept.map(|(accepted, entries)| {
            let side = if accepted { Side::Contained } else { Side::Disjoint };
            (side, FiniteReductionSet::from_entries(entries))
        }))
    })?;
    Ok(match raw {
        RawOutcome::Found { witness, side, certificate } => {
            SearchOutcome::Found { witness, side, certificate }
        }
        RawOutcome::Exhausted(stats) => SearchOutcome::Exhausted { stats },
        RawOutcome::TimedOut(stats) => SearchOutcome::TimedOut { stats },
    })
}

/// First witness within the configured bounds whose finite reduction set is
/// a single value.
pub fn find_constant_reduction(
    view: &OrderlyAlgebraView,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let probes = probe_terms(view, config);
    let raw = drive(view, config, &|reduced, stats| {
        let swept = sweep(reduced, &probes, stats, |v| Ok(v.clone()))?;
        Ok(swept.map(|(_, entries)| {
            (Side::Constant, FiniteReductionSet::from_entries(entries))
        }))
    })?;
    Ok(match raw {
        RawOutcome::Found { witness, side, certificate } => {
            SearchOutcome::Found { witness, side, certificate }
        }
        RawOutcome::Exhausted(stats) => SearchOutcome::Exhausted { stats },
        RawOutcome::TimedOut(stats) => SearchOutcome::TimedOut { stats },
    })
}

/// First witness within the configured bounds all of whose `<`-ordered
/// `n`-tuples of probe values lie on one side of the tuple coloring.
///
/// A witness with no `n`-tuples at all — fewer than `n` probes chain under
/// `<` — is never homogeneous: there is nothing on either side to certify.
pub fn find_tuple_homogeneous(
    view: &OrderlyAlgebraView,
    coloring: &TupleColoring,
    n: usize,
    config: &SearchConfig,
) -> Result<TupleSearchOutcome, SearchError> {
    if n == 0 {
        return Err(SearchError::EmptyTuple);
    }
    let TupleColoring::Component { index, coloring: inner } = coloring;
    if *index >= n {
        return Err(SearchError::ComponentOutOfRange { index: *index, n });
    }
    if n == 1 {
        // 1-tuples are plain probes: delegate and reshape the certificate.
        return Ok(match find_homogeneous_reduction(view, inner, config)? {
            SearchOutcome::Found { witness, side, certificate } => {
                let entries = certificate
                    .entries()
                    .iter()
                    .map(|e| TupleEntry {
                        terms: vec![e.term.clone()],
                        values: vec![e.value.clone()],
                    })
                    .collect();
                TupleSearchOutcome::Found {
                    witness,
                    side,
                    certificate: TupleReductionSet::from_entries(entries),
                }
            }
            SearchOutcome::Exhausted { stats } => TupleSearchOutcome::Exhausted { stats },
            SearchOutcome::TimedOut { stats } => TupleSearchOutcome::TimedOut { stats },
        });
    }

    let chains = AdmissiblePrefixes::new(probe_terms(view, config), n);
    let raw = drive(view, config, &|reduced, stats| {
        let mut entries: Vec<TupleEntry> = Vec::new();
        let mut common: Option<bool> = None;
        for chain in chains.clone() {
            let mut values = Vec::with_capacity(n);
            for t in chain.terms() {
                values.push(reduced.value(t).map_err(SearchError::View)?);
            }
            stats.probes_examined += 1;
            let accepted = coloring
                .accepts(&values)
                .map_err(|e| SearchError::View(e.into()))?;
            match common {
                None => common = Some(accepted),
                Some(prev) if prev != accepted => return Ok(None),
                Some(_) => {}
            }
            entries.push(TupleEntry { terms: chain.terms().to_vec(), values });
        }
        Ok(common.map(|accepted| {
            let side = if accepted { Side::Contained } else { Side::Disjoint };
            (side, TupleReductionSet::from_entries(entries))
        }))
    })?;
    Ok(match raw {
        RawOutcome::Found { witness, side, certificate } => {
            TupleSearchOutcome::Found { witness, side, certificate }
        }
        RawOutcome::Exhausted(stats) => TupleSearchOutcome::Exhausted { stats },
        RawOutcome::TimedOut(stats) => TupleSearchOutcome::TimedOut { stats },
    })
}

/// Outcome of [`verify_one_to_one_obstruction`]: how many witnesses were
/// checked and which of them failed to be obstructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub coloring: Coloring,
    pub checked: u64,
    pub violations: Vec<ObstructionViolation>,
}

/// A witness that is *not* obstructed: the value of its head entry and the
/// value of one application step land on the same side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionViolation {
    pub witness: Vec<OrderlyTerm>,
    pub head_value: String,
    pub applied_value: String,
}

impl ObstructionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify that the even-leading-parity coloring of the view's values
/// obstructs every reduction: for each admissible prefix `t⃗` of length `2`
/// through `k` with entries within `entry_bounds`, the values of `t_0` and
/// of `f t_0 t_1` must land on opposite sides, so no reduction by `t⃗` can
/// be homogeneous.
///
/// The coloring lives on values by pulling the parity of a term back along
/// the view: the side of a value is the leading-`f`-parity of a term
/// producing it. That is only well defined when the view is one-to-one on
/// parities over the probed inventory — if terms of both parities share a
/// value, the pullback collapses and the check stops with
/// [`SearchError::NotInjective`].
pub fn verify_one_to_one_obstruction(
    view: &OrderlyAlgebraView,
    k: usize,
    entry_bounds: &TermBounds,
) -> Result<ObstructionReport, SearchError> {
    let sig = view.signature().clone();
    let f = sig.only_binary().ok_or(SearchError::View(ViewError::NotSingleBinary))?.clone();
    let coloring = Coloring::leading_parity(&*f.name, Parity::Even);

    // Every value the check can meet comes from a term in this inventory:
    // witness entries themselves and one application of `f` to two of them.
    let inventory_bounds =
        TermBounds::new(2 * entry_bounds.max_size + 1, entry_bounds.max_index);
    let mut side_of: BTreeMap<Value, (bool, OrderlyTerm)> = BTreeMap::new();
    for t in enumerate_terms(&sig, &inventory_bounds) {
        let value = view.value(&t).map_err(SearchError::View)?;
        let side = coloring
            .accepts(&Value::Term(t.clone()))
            .map_err(|e| SearchError::View(e.into()))?;
        match side_of.get(&value) {
            None => {
                side_of.insert(value, (side, t));
            }
            Some((prev, witness)) if *prev != side => {
                let (even, odd) =
                    if *prev { (witness.clone(), t) } else { (t, witness.clone()) };
                return Err(SearchError::NotInjective {
                    value: value.to_string(),
                    even,
                    odd,
                });
            }
            Some(_) => {}
        }
    }

    let mut checked = 0;
    let mut violations = Vec::new();
    for len in 2..=k {
        for witness in AdmissiblePrefixes::new(enumerate_terms(&sig, entry_bounds), len) {
            checked += 1;
            let head = view.value(&witness.terms()[0]).map_err(SearchError::View)?;
            let applied_term = OrderlyTerm::new(Term::apply(
                &f,
                &[witness.terms()[0].term(), witness.terms()[1].term()],
            ))
            .expect("adjacent witness entries are in order");
            let applied = view.value(&applied_term).map_err(SearchError::View)?;
            let head_side = side_of[&head].0;
            let applied_side = side_of[&applied].0;
            if head_side == applied_side {
                violations.push(ObstructionViolation {
                    witness: witness.terms().to_vec(),
                    head_value: head.to_string(),
                    applied_value: applied.to_string(),
                });
            }
        }
    }
    Ok(ObstructionReport { coloring, checked, violations })
}

/// Outcome of [`check_injectivity`]: terms evaluated and the value
/// collisions found, each reported against the canonically first term
/// producing the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub checked: u64,
    pub collisions: Vec<ValueCollision>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueCollision {
    pub value: String,
    pub first: OrderlyTerm,
    pub second: OrderlyTerm,
}

impl InjectivityReport {
    pub fn is_injective(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Report every pair of distinct terms within `bounds` that the view maps
/// to the same value.
pub fn check_injectivity(
    view: &OrderlyAlgebraView,
    bounds: &TermBounds,
) -> Result<InjectivityReport, SearchError> {
    let mut first_of: BTreeMap<Value, OrderlyTerm> = BTreeMap::new();
    let mut checked = 0;
    let mut collisions = Vec::new();
    for t in enumerate_terms(view.signature(), bounds) {
        let value = view.value(&t).map_err(SearchError::View)?;
        checked += 1;
        match first_of.get(&value) {
            None => {
                first_of.insert(value, t);
            }
            Some(first) => collisions.push(ValueCollision {
                value: value.to_string(),
                first: first.clone(),
                second: t,
            }),
        }
    }
    Ok(InjectivityReport { checked, collisions })
}
