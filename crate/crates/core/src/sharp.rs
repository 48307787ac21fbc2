//! The index-doubling construction over a single binary symbol `f`.
//!
//! Every orderly term `t` splits into two parts: variables double,
//! `v_i ↦ (v_2i, v_2i+1)`, and an application `f s t` sends its first
//! argument's parts left and its second argument's parts right,
//! `f s t ↦ (f sˣ sʸ, f tˣ tʸ)`. The parts are again orderly, the first
//! precedes the second, and together they use exactly the doubled indices
//! `{2i, 2i+1}` of the original variables. Two exact substitution identities
//! connect splitting with admissible prefixes; the bulk checkers here verify
//! them over bounded enumerations.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraSpec, AssignmentPrefix};
use crate::enumerate::{enumerate_terms, AdmissiblePrefixes, TermBounds};
use crate::orderly::{OrderlyAlgebraView, ViewError};
use crate::signature::{Signature, Symbol};
use crate::term::{AdmissiblePrefix, IndexBeyondPrefix, OrderlyTerm, Term, Token};
use crate::value::Value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SharpError {
    #[error("index doubling needs a signature with a single binary symbol")]
    WrongSignature,
    #[error("pairing a witness needs an even length, got {len}")]
    OddWitness { len: usize },
    #[error("variable index {index} cannot be doubled without overflow")]
    IndexTooLarge { index: u32 },
    #[error("expected a pair at position {position}, got `{value}`")]
    NotPairs { position: usize, value: Value },
    #[error(transparent)]
    Index(#[from] IndexBeyondPrefix),
}

fn doubled(index: u32) -> Result<(u32, u32), SharpError> {
    let low = index
        .checked_mul(2)
        .and_then(|d| d.checked_add(1).map(|_| d))
        .ok_or(SharpError::IndexTooLarge { index })?;
    Ok((low, low + 1))
}

fn split_tokens(
    tokens: &[Token],
    at: usize,
    f: &Symbol,
    x: &mut Vec<Token>,
    y: &mut Vec<Token>,
) -> Result<usize, SharpError> {
    match &tokens[at] {
        Token::Var(i) => {
            let (lo, hi) = doubled(*i)?;
            x.push(Token::Var(lo));
            y.push(Token::Var(hi));
            Ok(at + 1)
        }
        Token::Sym(_) => {
            let (mut ax, mut ay) = (Vec::new(), Vec::new());
            let mid = split_tokens(tokens, at + 1, f, &mut ax, &mut ay)?;
            let (mut bx, mut by) = (Vec::new(), Vec::new());
            let end = split_tokens(tokens, mid, f, &mut bx, &mut by)?;
            x.push(Token::Sym(f.clone()));
            x.extend(ax);
            x.extend(ay);
            y.push(Token::Sym(f.clone()));
            y.extend(bx);
            y.extend(by);
            Ok(end)
        }
    }
}

/// Split an orderly term into its two doubled-index parts. The first part
/// always precedes the second.
pub fn split_term(
    t: &OrderlyTerm,
    sig: &Signature,
) -> Result<(OrderlyTerm, OrderlyTerm), SharpError> {
    let f = sig.only_binary().ok_or(SharpError::WrongSignature)?;
    let mut x = Vec::with_capacity(t.size());
    let mut y = Vec::with_capacity(t.size());
    split_tokens(t.tokens(), 0, f, &mut x, &mut y)?;
    let x = OrderlyTerm::new(Term::from_tokens_unchecked(x))
        .expect("parts of an orderly term are orderly");
    let y = OrderlyTerm::new(Term::from_tokens_unchecked(y))
        .expect("parts of an orderly term are orderly");
    debug_assert!(x.precedes(&y));
    Ok((x, y))
}

/// Wrap each witness entry as the application of `f` to its own parts:
/// entry `t_i` becomes `f t_iˣ t_iʸ`. Substituting the wrapped witness into
/// `s` equals wrapping the plain substitution — see [`wrap_identity_sides`].
pub fn wrap_witness(
    witness: &AdmissiblePrefix,
    sig: &Signature,
) -> Result<AdmissiblePrefix, SharpError> {
    let f = sig.only_binary().ok_or(SharpError::WrongSignature)?;
    let mut wrapped = Vec::with_capacity(witness.len());
    for t in witness.terms() {
        let (x, y) = split_term(t, sig)?;
        let term = Term::apply(f, &[x.term(), y.term()]);
        wrapped.push(OrderlyTerm::new(term).expect("parts in order"));
    }
    Ok(AdmissiblePrefix::from_terms_unchecked(wrapped))
}

/// Pair up consecutive witness entries: entries `u_2i, u_2i+1` become
/// `f u_2i u_2i+1`. The witness length must be even. Substituting the paired
/// witness into `s` equals substituting the original witness into
/// `f sˣ sʸ` — see [`pair_identity_sides`].
pub fn pair_witness(
    witness: &AdmissiblePrefix,
    sig: &Signature,
) -> Result<AdmissiblePrefix, SharpError> {
    let f = sig.only_binary().ok_or(SharpError::WrongSignature)?;
    if witness.len() % 2 != 0 {
        return Err(SharpError::OddWitness { len: witness.len() });
    }
    let mut paired = Vec::with_capacity(witness.len() / 2);
    for pair in witness.terms().chunks(2) {
        let term = Term::apply(f, &[pair[0].term(), pair[1].term()]);
        paired.push(OrderlyTerm::new(term).expect("consecutive entries are in order"));
    }
    Ok(AdmissiblePrefix::from_terms_unchecked(paired))
}

/// Both sides of the wrapped-witness identity for one `(s, t⃗)`:
/// left `s[t⃗']` with `t'_i = f t_iˣ t_iʸ`, right `f (s[t⃗])ˣ (s[t⃗])ʸ`.
pub fn wrap_identity_sides(
    s: &OrderlyTerm,
    witness: &AdmissiblePrefix,
    sig: &Signature,
) -> Result<(OrderlyTerm, OrderlyTerm), SharpError> {
    let f = sig.only_binary().ok_or(SharpError::WrongSignature)?;
    let left = s.substitute(&wrap_witness(witness, sig)?)?;
    let substituted = s.substitute(witness)?;
    let (x, y) = split_term(&substituted, sig)?;
    let right = OrderlyTerm::new(Term::apply(f, &[x.term(), y.term()]))
        .expect("parts in order");
    Ok((left, right))
}

/// Both sides of the paired-witness identity for one `(s, u⃗)` with `|u⃗|`
/// even: left `s[u⃗']` with `u'_i = f u_2i u_2i+1`, right `(f sˣ sʸ)[u⃗]`.
pub fn pair_identity_sides(
    s: &OrderlyTerm,
    witness: &AdmissiblePrefix,
    sig: &Signature,
) -> Result<(OrderlyTerm, OrderlyTerm), SharpError> {
    let f = sig.only_binary().ok_or(SharpError::WrongSignature)?;
    let left = s.substitute(&pair_witness(witness, sig)?)?;
    let (x, y) = split_term(s, sig)?;
    let wrapped_s = OrderlyTerm::new(Term::apply(f, &[x.term(), y.term()]))
        .expect("parts in order");
    let right = wrapped_s.substitute(witness)?;
    Ok((left, right))
}

/// Outcome of a bulk identity check over bounded enumerations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: u64,
    pub violations: Vec<IdentityViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub term: OrderlyTerm,
    pub witness: Vec<OrderlyTerm>,
    pub left: OrderlyTerm,
    pub right: OrderlyTerm,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn identity_report(
    sig: &Signature,
    term_bounds: &TermBounds,
    witness_len: usize,
    witness_bounds: &TermBounds,
    sides: impl Fn(
        &OrderlyTerm,
        &AdmissiblePrefix,
        &Signature,
    ) -> Result<(OrderlyTerm, OrderlyTerm), SharpError>,
    coverage: usize,
) -> Result<IdentityReport, SharpError> {
    let subjects: Vec<OrderlyTerm> = enumerate_terms(
        sig,
        &TermBounds::new(
            term_bounds.max_size,
            term_bounds.max_index.min(coverage.saturating_sub(1) as u32),
        ),
    );
    let pool = enumerate_terms(sig, witness_bounds);
    let mut checked = 0;
    let mut violations = Vec::new();
    for witness in AdmissiblePrefixes::new(pool, witness_len) {
        for s in &subjects {
            let (left, right) = sides(s, &witness, sig)?;
            checked += 1;
            if left != right {
                violations.push(IdentityViolation {
                    term: s.clone(),
                    witness: witness.terms().to_vec(),
                    left,
                    right,
                });
            }
        }
    }
    Ok(IdentityReport { checked, violations })
}

/// Check the wrapped-witness identity for every orderly `s` within
/// `term_bounds` (coverage-capped to the witness length) against every
/// witness chain of `witness_len` entries drawn from `witness_bounds`.
pub fn wrap_identity_report(
    sig: &Signature,
    term_bounds: &TermBounds,
    witness_len: usize,
    witness_bounds: &TermBounds,
) -> Result<IdentityReport, SharpError> {
    identity_report(sig, term_bounds, witness_len, witness_bounds, wrap_identity_sides, witness_len)
}

/// Check the paired-witness identity likewise; `witness_len` must be even
/// and `s` ranges over terms covered by half the witness length.
pub fn pair_identity_report(
    sig: &Signature,
    term_bounds: &TermBounds,
    witness_len: usize,
    witness_bounds: &TermBounds,
) -> Result<IdentityReport, SharpError> {
    if witness_len % 2 != 0 {
        return Err(SharpError::OddWitness { len: witness_len });
    }
    identity_report(
        sig,
        term_bounds,
        witness_len,
        witness_bounds,
        pair_identity_sides,
        witness_len / 2,
    )
}

/// Outcome of a bulk comparison of computed values or terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub checked: u64,
    pub violations: Vec<ComparisonViolation>,
}

/// One failed comparison: the subject term, which of the compared
/// expressions disagreed, and both sides in display form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonViolation {
    pub term: OrderlyTerm,
    pub stage: String,
    pub left: String,
    pub right: String,
}

impl ComparisonReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify that wrapped and paired witnesses interact with reduction as the
/// doubled-index construction demands. With `t⃗' = wrap(t⃗)` and
/// `u⃗' = pair(u⃗)`, every covered subject `s` within `bounds` is checked on
/// three comparisons:
///
/// 1. `s[t⃗'] = f (s[t⃗])ˣ (s[t⃗])ʸ` (exact terms),
/// 2. `s[u⃗'] = (f sˣ sʸ)[u⃗]` (exact terms),
/// 3. `♯D(s) = B(s[u⃗'])` (values), where `B` reduces `♯base` by `t⃗`,
///    `C` reduces `base` by `t⃗'`, and `D` reduces `C` by `u⃗`.
///
/// Point 3 is what makes `♯D` a reduction of `♯base`: the witness carrying
/// one to the other is exactly `u⃗'`. Subjects whose variables outrun the
/// coverage `min(|t⃗|, |u⃗|/2)` are skipped; `checked` counts subjects that
/// ran all three comparisons. Entries of `u⃗` must stay within `t⃗`'s
/// coverage, otherwise the middle reduction truncates and the chain is
/// rejected up front.
pub fn check_claim_1010a(
    base: &OrderlyAlgebraView,
    tvec: &AdmissiblePrefix,
    uvec: &AdmissiblePrefix,
    bounds: &TermBounds,
) -> Result<ComparisonReport, ViewError> {
    let sig = base.signature().clone();
    let tprime = wrap_witness(tvec, &sig)?;
    let uprime = pair_witness(uvec, &sig)?;
    for u in uvec.terms() {
        if let Some(m) = u.max_var() {
            if m as usize >= tvec.len() {
                return Err(SharpError::Index(IndexBeyondPrefix {
                    index: m,
                    len: tvec.len(),
                })
                .into());
            }
        }
    }
    let b = base.sharp()?.reduce(tvec);
    let d = base.reduce(&tprime).reduce(uvec);
    let sharp_d = d.sharp()?;
    let coverage = tvec.len().min(uvec.len() / 2);

    let mut checked = 0;
    let mut violations = Vec::new();
    let mut compare = |term: &OrderlyTerm, stage: &str, left: String, right: String| {
        if left != right {
            violations.push(ComparisonViolation {
                term: term.clone(),
                stage: stage.to_string(),
                left,
                right,
            });
        }
    };
    for s in enumerate_terms(&sig, bounds) {
        let need = s.max_var().map_or(0, |m| m as usize + 1);
        if need > coverage {
            continue;
        }
        let (wl, wr) = wrap_identity_sides(&s, tvec, &sig)?;
        compare(&s, "wrap-identity", wl.to_string(), wr.to_string());
        let (pl, pr) = pair_identity_sides(&s, uvec, &sig)?;
        compare(&s, "pair-identity", pl.to_string(), pr.to_string());
        let left = sharp_d.value(&s)?;
        let right = b.value(&s.substitute(&uprime).map_err(SharpError::Index)?)?;
        compare(&s, "reduction-chain", left.to_string(), right.to_string());
        checked += 1;
    }
    Ok(ComparisonReport { checked, violations })
}

/// Compare the two routes from an algebra of pairs to values: inducing over
/// the paired algebra directly versus sharpening the view induced over the
/// component algebra under the interleaved assignment. For every term within
/// `bounds` covered by `b`,
///
/// `Induced(pair(inner), b)(t) = ♯Induced(inner, interleave(b))(t)`.
pub fn check_theorem_0107b(
    inner: &AlgebraSpec,
    b: &AssignmentPrefix,
    bounds: &TermBounds,
) -> Result<ComparisonReport, ViewError> {
    let paired = AlgebraSpec::pair(inner.clone())?;
    let flat = interleave_pairs(b)?;
    let direct = OrderlyAlgebraView::induced(paired, b.clone());
    let sharped = OrderlyAlgebraView::induced(inner.clone(), flat).sharp()?;

    let mut checked = 0;
    let mut violations = Vec::new();
    for t in enumerate_terms(direct.signature(), bounds) {
        let need = t.max_var().map_or(0, |m| m as usize + 1);
        if need > b.len() {
            continue;
        }
        let left = direct.value(&t)?;
        let right = sharped.value(&t)?;
        checked += 1;
        if left != right {
            violations.push(ComparisonViolation {
                term: t,
                stage: "paired-vs-sharp".to_string(),
                left: left.to_string(),
                right: right.to_string(),
            });
        }
    }
    Ok(ComparisonReport { checked, violations })
}

/// Refute candidate witnesses: for each admissible prefix of `candidate_len`
/// entries drawn from `candidate_bounds`, search for a probe `s` within
/// `probe_bounds` where `target(s) ≠ base[candidate](s)`. Candidates with no
/// refuting probe are returned as survivors — within these bounds they are
/// indistinguishable from a witness carrying `base` to `target`.
pub fn refute_reduction_candidates(
    target: &OrderlyAlgebraView,
    base: &OrderlyAlgebraView,
    candidate_len: usize,
    candidate_bounds: &TermBounds,
    probe_bounds: &TermBounds,
) -> Result<RefutationReport, ViewError> {
    let sig = target.signature().clone();
    let probes: Vec<OrderlyTerm> = enumerate_terms(&sig, probe_bounds)
        .into_iter()
        .filter(|t| t.max_var().map_or(0, |m| m as usize + 1) <= candidate_len)
        .collect();
    let pool = enumerate_terms(&sig, candidate_bounds);
    let mut refuted = Vec::new();
    let mut survivors = Vec::new();
    for candidate in AdmissiblePrefixes::new(pool, candidate_len) {
        let reduced = base.reduce(&candidate);
        let mut refutation = None;
        for s in &probes {
            let left = target.value(s)?;
            let right = reduced.value(s)?;
            if left != right {
                refutation = Some(Refutation {
                    witness: candidate.terms().to_vec(),
                    term: s.clone(),
                    left: left.to_string(),
                    right: right.to_string(),
                });
                break;
            }
        }
        match refutation {
            Some(r) => refuted.push(r),
            None => survivors.push(candidate.terms().to_vec()),
        }
    }
    Ok(RefutationReport { refuted, survivors })
}

/// Outcome of [`refute_reduction_candidates`]: every candidate lands either
/// in `refuted` (with its distinguishing probe) or in `survivors`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    pub refuted: Vec<Refutation>,
    pub survivors: Vec<Vec<OrderlyTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub witness: Vec<OrderlyTerm>,
    pub term: OrderlyTerm,
    pub left: String,
    pub right: String,
}

/// Flatten an assignment of pairs into the assignment of their components:
/// `⟨(x_0,y_0), (x_1,y_1), …⟩ ↦ ⟨x_0, y_0, x_1, y_1, …⟩`.
pub fn interleave_pairs(a: &AssignmentPrefix) -> Result<AssignmentPrefix, SharpError> {
    let mut values = Vec::with_capacity(a.len() * 2);
    for (position, v) in a.values().iter().enumerate() {
        match v {
            Value::Pair(x, y) => {
                values.push((**x).clone());
                values.push((**y).clone());
            }
            other => {
                return Err(SharpError::NotPairs { position, value: other.clone() });
            }
        }
    }
    Ok(AssignmentPrefix::from_values_unchecked(values))
}
