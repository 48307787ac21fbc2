//! Independent oracles for the acceptance tests.
//!
//! Everything here recomputes results from scratch — text-level term
//! generation, leaf-sum evaluation, nested-loop search — sharing no code
//! with the library beyond the canonical-order convention (size, then
//! lexicographic text) that both sides promise.

/// One generated term: rendered text plus its variable window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub text: String,
    pub first: u32,
    pub last: u32,
    pub size: usize,
}

/// All orderly terms over the single binary symbol `f` with the given
/// bounds, in canonical order. Built bottom-up by size: a term of size
/// 2k+1 is `f s t` with `s`'s window strictly before `t`'s.
pub fn orderly_terms(max_size: usize, max_index: u32) -> Vec<RawTerm> {
    let mut by_size: Vec<Vec<RawTerm>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        for i in 0..=max_index {
            by_size[1].push(RawTerm { text: format!("v{i}"), first: i, last: i, size: 1 });
        }
    }
    for size in (3..=max_size).step_by(2) {
        let mut level = Vec::new();
        for left_size in (1..size - 1).step_by(2) {
            let right_size = size - 1 - left_size;
            for left in &by_size[left_size] {
                for right in &by_size[right_size] {
                    if left.last < right.first {
                        level.push(RawTerm {
                            text: format!("f {} {}", left.text, right.text),
                            first: left.first,
                            last: right.last,
                            size,
                        });
                    }
                }
            }
        }
        by_size[size] = level;
    }
    let mut all: Vec<RawTerm> = by_size.into_iter().flatten().collect();
    all.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.text.cmp(&b.text)));
    all
}

/// All `<`-increasing chains of the given length over a term pool, in
/// lexicographic order of pool indices (the pool is assumed canonically
/// sorted, so this is the order the library enumerates witnesses in).
pub fn chains(pool: &[RawTerm], len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(len);
    extend_chain(pool, len, None, &mut chain, &mut out);
    out
}

fn extend_chain(
    pool: &[RawTerm],
    len: usize,
    after: Option<u32>,
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chain.len() == len {
        out.push(chain.clone());
        return;
    }
    for (i, t) in pool.iter().enumerate() {
        if after.is_none_or(|last| t.first > last) {
            chain.push(i);
            extend_chain(pool, len, Some(t.last), chain, out);
            chain.pop();
        }
    }
}

/// Evaluate a term text under natural addition: the sum of the assignment
/// values at its variable leaves.
pub fn nat_sum(text: &str, values: &[u64]) -> u64 {
    text.split_whitespace()
        .filter_map(|tok| tok.strip_prefix('v'))
        .map(|i| values[i.parse::<usize>().expect("variable index")])
        .sum()
}

/// What the brute-force search found first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleHit {
    pub witness: Vec<String>,
    pub contained: bool,
}

/// Nested-loop first homogeneous reduction for a residue coloring over
/// natural addition: witnesses of length `k` from entries of size
/// `<= entry_size` over the assignment's coverage, judged over all probes
/// of size `<= fr_size` in the variables `v0 … v(k-1)`.
pub fn hindman_oracle(
    a: &[u64],
    modulus: u64,
    accept: &[u64],
    k: usize,
    entry_size: usize,
    fr_size: usize,
) -> Option<OracleHit> {
    let pool = orderly_terms(entry_size, (a.len() - 1) as u32);
    let probes = orderly_terms(fr_size, (k - 1) as u32);
    for chain in chains(&pool, k) {
        let entry_values: Vec<u64> = chain.iter().map(|&i| nat_sum(&pool[i].text, a)).collect();
        let mut side: Option<bool> = None;
        let mut homogeneous = true;
        for probe in &probes {
            let accepted = accept.contains(&(nat_sum(&probe.text, &entry_values) % modulus));
            match side {
                None => side = Some(accepted),
                Some(s) if s != accepted => {
                    homogeneous = false;
                    break;
                }
                Some(_) => {}
            }
        }
        if homogeneous {
            return Some(OracleHit {
                witness: chain.iter().map(|&i| pool[i].text.clone()).collect(),
                contained: side.unwrap_or(false),
            });
        }
    }
    None
}
