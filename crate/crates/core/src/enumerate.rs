//! Exhaustive enumeration of orderly terms and admissible prefixes.
//!
//! Everything downstream (reductions, checks, searches) agrees on one
//! canonical order: terms by (size, lexicographic canonical text), prefixes
//! lexicographically entry by entry in that term order. Deterministic
//! first-witness searches depend on this.

use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::signature::{Signature, Symbol};
use crate::term::{OrderlyTerm, Term, Token};

/// Size and variable-index bounds for a term enumeration. Every report that
/// depends on an enumeration echoes its bounds, because a clean result only
/// certifies the space actually scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermBounds {
    pub max_size: usize,
    pub max_index: u32,
}

impl TermBounds {
    pub fn new(max_size: usize, max_index: u32) -> TermBounds {
        TermBounds { max_size, max_index }
    }
}

/// One node of a term skeleton: a concrete symbol or a variable slot.
#[derive(Clone)]
enum Slot {
    Sym(Symbol),
    Leaf,
}

/// All skeletons (terms with unnamed variable slots) of exactly `size`
/// tokens, built recursively per symbol and argument-size composition.
fn skeletons(sig: &Signature, size: usize, memo: &mut Vec<Option<Vec<Vec<Slot>>>>) -> Vec<Vec<Slot>> {
    if let Some(done) = &memo[size] {
        return done.clone();
    }
    let mut out: Vec<Vec<Slot>> = Vec::new();
    if size == 1 {
        out.push(vec![Slot::Leaf]);
    } else if size >= 2 {
        for sym in sig.symbols() {
            let budget = size - 1;
            if budget < sym.arity {
                continue;
            }
            for parts in compositions(budget, sym.arity) {
                let mut partials: Vec<Vec<Slot>> = vec![vec![Slot::Sym(sym.clone())]];
                for part in &parts {
                    let arg_shapes = skeletons(sig, *part, memo);
                    let mut next = Vec::with_capacity(partials.len() * arg_shapes.len());
                    for p in &partials {
                        for a in &arg_shapes {
                            let mut q = p.clone();
                            q.extend(a.iter().cloned());
                            next.push(q);
                        }
                    }
                    partials = next;
                }
                out.extend(partials);
            }
        }
    }
    memo[size] = Some(out.clone());
    out
}

/// All `k`-tuples of positive integers summing to `total`.
fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..=(total - (k - 1)) {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every orderly term over `sig` within `bounds`, in canonical order.
///
/// A skeleton with `k` leaves combines with each strictly increasing choice
/// of `k` indices from `0..=max_index`; every such choice is orderly, and the
/// map is a bijection onto orderly terms.
pub fn enumerate_terms(sig: &Signature, bounds: &TermBounds) -> Vec<OrderlyTerm> {
    let mut memo: Vec<Option<Vec<Vec<Slot>>>> = vec![None; bounds.max_size + 1];
    let index_pool: Vec<u32> = (0..=bounds.max_index).collect();
    let mut out: Vec<OrderlyTerm> = Vec::new();
    for size in 1..=bounds.max_size {
        for skel in skeletons(sig, size, &mut memo) {
            let leaves = skel.iter().filter(|s| matches!(s, Slot::Leaf)).count();
            if leaves == 0 || leaves > index_pool.len() {
                continue;
            }
            for combo in index_pool.iter().combinations(leaves) {
                let mut tokens = Vec::with_capacity(skel.len());
                let mut next_leaf = 0;
                for slot in &skel {
                    match slot {
                        Slot::Sym(s) => tokens.push(Token::Sym(s.clone())),
                        Slot::Leaf => {
                            tokens.push(Token::Var(*combo[next_leaf]));
                            next_leaf += 1;
                        }
                    }
                }
                out.push(OrderlyTerm::from_term_unchecked(Term::from_tokens_unchecked(tokens)));
            }
        }
    }
    out.sort();
    out
}

/// Streaming enumeration of admissible prefixes of a fixed length whose
/// entries come from a fixed (canonically sorted) term list.
///
/// The stream yields prefixes in lexicographic order entry by entry, is
/// cloneable, and restarts from scratch when rebuilt with the same inputs —
/// independent passes see the same sequence.
#[derive(Clone)]
pub struct AdmissiblePrefixes {
    terms: Arc<Vec<OrderlyTerm>>,
    firsts: Arc<Vec<u32>>,
    lasts: Arc<Vec<u32>>,
    length: usize,
    /// Positions into `terms` forming the current partial chain.
    state: Vec<usize>,
    /// Slots below this are pinned and never backtracked over.
    floor: usize,
    started: bool,
    done: bool,
}

impl AdmissiblePrefixes {
    /// Prefixes of exactly `length` entries drawn from `terms`. The list is
    /// sorted canonically here, so any term collection works.
    pub fn new(mut terms: Vec<OrderlyTerm>, length: usize) -> AdmissiblePrefixes {
        terms.sort();
        let firsts = terms.iter().map(|t| t.first_var().expect("terms have variables")).collect();
        let lasts = terms.iter().map(|t| t.last_var().expect("terms have variables")).collect();
        AdmissiblePrefixes {
            terms: Arc::new(terms),
            firsts: Arc::new(firsts),
            lasts: Arc::new(lasts),
            length,
            state: Vec::new(),
            floor: 0,
            started: false,
            done: false,
        }
    }

    /// The sub-stream of chains whose first entry is pinned to position
    /// `first` of the sorted list. Used to fan a search out over disjoint
    /// chunks that jointly cover the full stream in order.
    pub(crate) fn with_first(&self, first: usize) -> AdmissiblePrefixes {
        AdmissiblePrefixes {
            terms: Arc::clone(&self.terms),
            firsts: Arc::clone(&self.firsts),
            lasts: Arc::clone(&self.lasts),
            length: self.length,
            state: vec![first],
            floor: 1,
            started: false,
            done: self.length == 0 || first >= self.terms.len(),
        }
    }

    pub(crate) fn term_list(&self) -> &Arc<Vec<OrderlyTerm>> {
        &self.terms
    }

    /// Smallest candidate position `>= from` that can follow the current
    /// chain (any position at all for an empty chain).
    fn candidate(&self, from: usize) -> Option<usize> {
        let constraint = self.state.last().map(|&p| self.lasts[p]);
        (from..self.terms.len()).find(|&p| match constraint {
            Some(last) => self.firsts[p] > last,
            None => true,
        })
    }

    /// Complete the current partial chain to full length, trying candidates
    /// from `from` at the deepest open slot and backtracking as needed.
    fn fill(&mut self, mut from: usize) -> bool {
        while self.state.len() < self.length {
            match self.candidate(from) {
                Some(p) => {
                    self.state.push(p);
                    from = 0;
                }
                None => {
                    if self.state.len() <= self.floor {
                        return false;
                    }
                    from = self.state.pop().expect("nonempty above floor") + 1;
                }
            }
        }
        true
    }

    fn emit(&self) -> crate::term::AdmissiblePrefix {
        crate::term::AdmissiblePrefix::from_terms_unchecked(
            self.state.iter().map(|&p| self.terms[p].clone()).collect(),
        )
    }
}

impl Iterator for AdmissiblePrefixes {
    type Item = crate::term::AdmissiblePrefix;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.length == 0 {
            self.done = true;
            return None;
        }
        let advanced = if !self.started {
            self.started = true;
            // A pinned first entry counts as already filled.
            self.fill(0)
        } else if self.state.len() <= self.floor {
            false
        } else {
            let from = self.state.pop().expect("nonempty above floor") + 1;
            self.fill(from)
        };
        if advanced {
            Some(self.emit())
        } else {
            self.done = true;
            None
        }
    }
}

/// Admissible prefixes of exactly `length` entries, each entry an orderly
/// term within `bounds`, in canonical (lexicographic) order.
pub fn admissible_prefixes(
    sig: &Signature,
    length: usize,
    bounds: &TermBounds,
) -> AdmissiblePrefixes {
    AdmissiblePrefixes::new(enumerate_terms(sig, bounds), length)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::single_binary()
    }

    fn texts(terms: &[OrderlyTerm]) -> Vec<String> {
        terms.iter().map(|t| t.to_string()).collect()
    }

    // === Term enumeration: frozen expected listings ===

    #[test]
    fn enumerates_size_3_index_1() {
        let got = enumerate_terms(&sig(), &TermBounds::new(3, 1));
        assert_eq!(texts(&got), ["v0", "v1", "f v0 v1"]);
    }

    #[test]
    fn enumerates_size_3_index_2() {
        let got = enumerate_terms(&sig(), &TermBounds::new(3, 2));
        assert_eq!(
            texts(&got),
            ["v0", "v1", "v2", "f v0 v1", "f v0 v2", "f v1 v2"]
        );
    }

    #[test]
    fn enumerates_size_5_index_2() {
        let got = enumerate_terms(&sig(), &TermBounds::new(5, 2));
        assert_eq!(
            texts(&got),
            [
                "v0",
                "v1",
                "v2",
                "f v0 v1",
                "f v0 v2",
                "f v1 v2",
                "f f v0 v1 v2",
                "f v0 f v1 v2",
            ]
        );
    }

    // === Term enumeration: independent counting oracle ===
    //
    // Over a single binary symbol, a term with k variables has size 2k-1 and
    // there are C(max_index+1, k) index choices times Catalan(k-1) shapes.

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut num = 1u64;
        for i in 0..k {
            num = num * (n - i) / (i + 1);
        }
        num
    }

    fn catalan(n: u64) -> u64 {
        binomial(2 * n, n) / (n + 1)
    }

    fn expected_count(max_size: usize, max_index: u32) -> u64 {
        let mut total = 0;
        let mut k = 1u64;
        while 2 * k - 1 <= max_size as u64 {
            total += binomial(max_index as u64 + 1, k) * catalan(k - 1);
            k += 1;
        }
        total
    }

    #[test]
    fn counts_match_catalan_binomial_oracle() {
        for (max_size, max_index) in [(1, 5), (3, 3), (5, 4), (7, 7), (9, 9)] {
            let got = enumerate_terms(&sig(), &TermBounds::new(max_size, max_index));
            assert_eq!(
                got.len() as u64,
                expected_count(max_size, max_index),
                "bounds ({max_size}, {max_index})"
            );
        }
    }

    #[test]
    fn enumeration_is_sorted_orderly_and_duplicate_free() {
        let got = enumerate_terms(&sig(), &TermBounds::new(7, 5));
        assert!(got.windows(2).all(|w| w[0] < w[1]));
        assert!(got.iter().all(|t| t.is_orderly()));
    }

    #[test]
    fn enumerates_mixed_arity_signatures() {
        let sig = Signature::new([("f", 2), ("g", 1)]).unwrap();
        let got = enumerate_terms(&sig, &TermBounds::new(3, 1));
        assert_eq!(
            texts(&got),
            ["v0", "v1", "g v0", "g v1", "f v0 v1", "g g v0", "g g v1"]
        );
    }

    // === Admissible prefix streams ===

    fn chains(length: usize, bounds: TermBounds) -> Vec<String> {
        admissible_prefixes(&sig(), length, &bounds)
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn streams_length_2_chains_over_variables() {
        assert_eq!(
            chains(2, TermBounds::new(1, 2)),
            ["⟨v0, v1⟩", "⟨v0, v2⟩", "⟨v1, v2⟩"]
        );
    }

    #[test]
    fn unsatisfiable_stream_is_empty() {
        // Only v0 and v1 exist; no 3-chain is possible.
        assert!(chains(3, TermBounds::new(1, 1)).is_empty());
    }

    #[test]
    fn chains_interleave_term_sizes_in_lexicographic_order() {
        assert_eq!(
            chains(2, TermBounds::new(3, 2)),
            [
                "⟨v0, v1⟩",
                "⟨v0, v2⟩",
                "⟨v0, f v1 v2⟩",
                "⟨v1, v2⟩",
                "⟨f v0 v1, v2⟩",
            ]
        );
    }

    #[test]
    fn stream_is_restartable_and_cloneable() {
        let mut first = admissible_prefixes(&sig(), 2, &TermBounds::new(3, 3));
        let upfront: Vec<_> = first.clone().collect();
        // Consume two entries, then restart by rebuilding.
        first.next();
        first.next();
        let rebuilt: Vec<_> = admissible_prefixes(&sig(), 2, &TermBounds::new(3, 3)).collect();
        assert_eq!(upfront, rebuilt);
        assert!(!upfront.is_empty());
    }

    #[test]
    fn pinned_first_chunks_partition_the_stream() {
        let stream = admissible_prefixes(&sig(), 3, &TermBounds::new(3, 4));
        let whole: Vec<_> = stream.clone().collect();
        let mut chunked = Vec::new();
        for first in 0..stream.term_list().len() {
            chunked.extend(stream.with_first(first));
        }
        assert_eq!(whole, chunked);
        assert!(!whole.is_empty());
    }

    #[test]
    fn prefix_entries_satisfy_the_admissibility_chain() {
        for p in admissible_prefixes(&sig(), 3, &TermBounds::new(3, 5)) {
            for w in p.terms().windows(2) {
                assert!(w[0].precedes(&w[1]), "{} then {}", w[0], w[1]);
            }
        }
    }
}
