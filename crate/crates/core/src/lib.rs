//! Orderly terms, admissible substitution, and reductions of orderly algebras.
//!
//! An *orderly term* is a prefix-notation term whose variable indices strictly
//! increase left to right; `t < t'` when every variable of `t` has a smaller
//! index than every variable of `t'`. Substituting an admissible prefix — a
//! nonempty `<`-increasing sequence of orderly terms — into an orderly term
//! yields another orderly term, and this single operation drives everything
//! else here: reductions of assignment sequences, reduced and induced views of
//! orderly algebras, the index-doubling pair construction, and bounded
//! searches for reductions homogeneous for a coloring.
//!
//! Start with the runnable examples (`cargo run --example <name>`):
//!
//! - `validate_term` — parse terms and check orderliness
//! - `enumerate_terms` — list orderly terms and admissible prefixes in
//!   canonical order
//! - `reduce_sequence` — reduce an assignment by an admissible prefix
//! - `orderly_views` — induced, constant, free, and reduced views
//! - `reconstruct_algebra` — recover a finite table from a view
//! - `semigroup_check` — which views are orderly semigroups
//! - `sharp_construction` — index doubling and its exact laws
//! - `pair_algebra` — pairing mirrors the sharp of the induced view
//! - `nowhere_associative` — pairing breaks associativity everywhere
//! - `hindman_search` — homogeneous reductions for residue colorings
//! - `obstruction` — why no reduction of the free view is one-to-one
//! - `variable_words` — words with a designated variable letter
//!
//! The same capabilities are scriptable through the `orderly` binary, which
//! prints machine-readable JSON on stdout and a run manifest on stderr.

pub mod algebra;
pub mod cli;
pub mod coloring;
pub mod enumerate;
pub mod orderly;
pub mod report;
pub mod search;
pub mod sharp;
pub mod signature;
pub mod term;
pub mod value;

pub use algebra::{
    finite_reductions, reduce_sequence, tuple_reductions, AlgebraSpec, AssignmentPrefix,
    EvalError, FiniteReductionSet, TableAlgebra, TupleReductionSet,
};
pub use coloring::{Coloring, ColoringError, Parity, TupleColoring};
pub use enumerate::{admissible_prefixes, enumerate_terms, AdmissiblePrefixes, TermBounds};
pub use orderly::{
    OrderlyAlgebraView, ReconstructError, ViewError, ViewKind, DEFAULT_UNIVERSE_CAP,
};
pub use search::{
    check_injectivity, find_constant_reduction, find_homogeneous_reduction,
    find_tuple_homogeneous, verify_one_to_one_obstruction, InjectivityReport,
    ObstructionReport, ObstructionViolation, SearchConfig, SearchError, SearchOutcome,
    SearchStats, Side, TupleSearchOutcome, ValueCollision,
};
pub use sharp::{
    check_claim_1010a, check_theorem_0107b, interleave_pairs, pair_identity_report,
    pair_identity_sides, pair_witness, refute_reduction_candidates, split_term,
    wrap_identity_report, wrap_identity_sides, wrap_witness, ComparisonReport,
    ComparisonViolation, Refutation, RefutationReport, SharpError,
};
pub use signature::{Signature, SignatureError, Symbol};
pub use term::{
    AdmissibleError, AdmissiblePrefix, IndexBeyondPrefix, NotOrderly, OrderlyTerm, ParseError,
    Term, TermError, Token,
};
pub use value::Value;
