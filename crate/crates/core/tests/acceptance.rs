//! The acceptance gate: one test per criterion, each printing a PASS line
//! with its workload counts (visible with `--nocapture`). Expected values
//! come from the independent oracles in `common`, never from the library
//! under test.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orderly_algebra::{
    admissible_prefixes, check_theorem_0107b, enumerate_terms, find_homogeneous_reduction,
    pair_identity_sides, reduce_sequence, split_term, verify_one_to_one_obstruction,
    wrap_identity_sides, AdmissiblePrefix, AlgebraSpec, AssignmentPrefix, Coloring,
    OrderlyAlgebraView, OrderlyTerm, SearchConfig, SearchOutcome, Side, Signature, TableAlgebra,
    TermBounds, Value, DEFAULT_UNIVERSE_CAP,
};

fn pass(criterion: usize, detail: &str) {
    println!("criterion {criterion}: PASS — {detail}");
}

/// Binary table on {0, 1} with entry (i, j) drawn from the bits of `code`.
fn two_element_table(code: u32) -> TableAlgebra {
    let v = |n: u64| Value::nat(n);
    let entries = (0..4)
        .map(|slot| {
            let (i, j) = (slot / 2, slot % 2);
            (vec![v(i), v(j)], v(u64::from((code >> slot) & 1)))
        })
        .collect();
    TableAlgebra::new(vec![v(0), v(1)], vec![("f".to_string(), 2, entries)])
        .expect("total table")
}

/// Addition mod 3 as a lookup table.
fn three_element_table() -> TableAlgebra {
    let v = |n: u64| Value::nat(n);
    let mut entries = Vec::new();
    for i in 0..3u64 {
        for j in 0..3u64 {
            entries.push((vec![v(i), v(j)], v((i + j) % 3)));
        }
    }
    TableAlgebra::new(vec![v(0), v(1), v(2)], vec![("f".to_string(), 2, entries)])
        .expect("total table")
}

// === Criterion 1: substitution laws ===

#[test]
fn criterion_1_substitution_laws() {
    let start = Instant::now();
    let sig = Signature::single_binary();

    // Tie the quantifier domain to the independent generator first.
    let subjects = enumerate_terms(&sig, &TermBounds::new(7, 7));
    let oracle: Vec<String> =
        common::orderly_terms(7, 7).into_iter().map(|t| t.text).collect();
    assert_eq!(
        subjects.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        oracle,
        "enumeration disagrees with the oracle generator",
    );

    let mut pool: Vec<AdmissiblePrefix> = Vec::new();
    for len in 1..=4 {
        pool.extend(admissible_prefixes(&sig, len, &TermBounds::new(3, 7)));
    }
    let mut checked = 0u64;

    // Identity-witness fixpoint: substituting ⟨v0 … v(n-1)⟩ changes nothing.
    for s in &subjects {
        for n in 1..=4usize {
            if s.max_var().is_none_or(|m| (m as usize) < n) {
                checked += 1;
                let image = s.substitute(&AdmissiblePrefix::identity(n)).expect("covered");
                assert_eq!(&image, s, "identity fixpoint failed at {s}");
            }
        }
    }

    // Orderliness closure and order preservation, per prefix.
    for p in &pool {
        let covered: Vec<&OrderlyTerm> = subjects
            .iter()
            .filter(|s| s.max_var().is_none_or(|m| (m as usize) < p.len()))
            .collect();
        let images: Vec<OrderlyTerm> =
            covered.iter().map(|s| s.substitute(p).expect("covered")).collect();
        for (s, image) in covered.iter().zip(&images) {
            checked += 1;
            assert!(image.term().is_orderly(), "{s}[{p}] is not orderly");
        }
        for i in 0..covered.len() {
            for j in 0..covered.len() {
                if covered[i].precedes(covered[j]) {
                    checked += 1;
                    assert!(
                        images[i].precedes(&images[j]),
                        "substitution by {p} broke {} < {}",
                        covered[i],
                        covered[j],
                    );
                }
            }
        }
    }

    // Composition law: s[a][b] = s[a ∘ b] whenever b covers a's entries.
    for a in &pool {
        let a_max = a.terms().iter().filter_map(|t| t.max_var()).max();
        let covered: Vec<&OrderlyTerm> = subjects
            .iter()
            .filter(|s| s.max_var().is_none_or(|m| (m as usize) < a.len()))
            .collect();
        for b in &pool {
            if a_max.is_some_and(|m| (m as usize) >= b.len()) {
                continue;
            }
            let composed = a.compose(b).expect("b covers a");
            for s in &covered {
                checked += 1;
                let two_step =
                    s.substitute(a).expect("covered").substitute(b).expect("covered");
                let one_step = s.substitute(&composed).expect("covered");
                assert_eq!(two_step, one_step, "composition law failed at {s}, {a}, {b}");
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:.1?}");
    pass(1, &format!("substitution laws, {checked} checks, 0 violations, {elapsed:.1?}"));
}

// === Criterion 2: sharp identities ===

#[test]
fn criterion_2_sharp_identities() {
    let sig = Signature::single_binary();

    // Occurrence law, exhaustive to size 9: splitting t yields x < y whose
    // variables together are exactly {2i, 2i+1 : i a variable of t}.
    let terms = enumerate_terms(&sig, &TermBounds::new(9, 9));
    for t in &terms {
        let (x, y) = split_term(t, &sig).expect("single binary");
        assert!(x.precedes(&y), "{t}: parts out of order");
        let mut expected = BTreeSet::new();
        for i in t.variables() {
            expected.insert(2 * i);
            expected.insert(2 * i + 1);
        }
        let mut actual = x.variables();
        actual.extend(y.variables());
        assert_eq!(actual, expected, "occurrence law failed at {t}");
    }
    let occurrence_checked = terms.len();

    // Both substitution identities, over every (t⃗, u⃗) pair with t⃗ of
    // length 3 or 4 and u⃗ even-length within t⃗'s coverage.
    let subjects = enumerate_terms(&sig, &TermBounds::new(7, 7));
    let mut tvecs: Vec<AdmissiblePrefix> = Vec::new();
    for len in [3, 4] {
        tvecs.extend(admissible_prefixes(&sig, len, &TermBounds::new(3, 5)));
    }
    let mut pairs = 0u64;
    let mut identity_checks = 0u64;
    for tvec in &tvecs {
        let mut uvecs: Vec<AdmissiblePrefix> = Vec::new();
        for len in [2, 4] {
            uvecs.extend(admissible_prefixes(
                &sig,
                len,
                &TermBounds::new(3, tvec.len() as u32 - 1),
            ));
        }
        for uvec in &uvecs {
            pairs += 1;
            for s in &subjects {
                if s.max_var().is_none_or(|m| (m as usize) < tvec.len()) {
                    let (left, right) = wrap_identity_sides(s, tvec, &sig).expect("covered");
                    assert_eq!(left, right, "wrap identity failed at {s}, {tvec}");
                    identity_checks += 1;
                }
                if s.max_var().is_none_or(|m| (m as usize) < uvec.len() / 2) {
                    let (left, right) = pair_identity_sides(s, uvec, &sig).expect("covered");
                    assert_eq!(left, right, "pair identity failed at {s}, {uvec}");
                    identity_checks += 1;
                }
            }
        }
    }
    assert!(pairs >= 100, "only {pairs} (t⃗, u⃗) pairs enumerated");
    pass(
        2,
        &format!(
            "occurrence law on {occurrence_checked} terms, identities on {pairs} witness pairs \
             ({identity_checks} checks), 0 violations"
        ),
    );
}

// === Criterion 3: pairing matches the sharped view ===

#[test]
fn criterion_3_pairing_matches_sharp() {
    // 50 random pair assignments over natural addition, terms to size 7.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0107b);
    let paired_nat = AlgebraSpec::pair(AlgebraSpec::NatAdd).expect("single binary");
    let mut checked = 0u64;
    for _ in 0..50 {
        let values: Vec<Value> = (0..4)
            .map(|_| {
                Value::pair(
                    Value::nat(rng.random_range(1..=40)),
                    Value::nat(rng.random_range(1..=40)),
                )
            })
            .collect();
        let b = AssignmentPrefix::new(&paired_nat, values).expect("pairs of naturals");
        let report = check_theorem_0107b(&AlgebraSpec::NatAdd, &b, &TermBounds::new(7, 3))
            .expect("routes evaluate");
        assert!(report.violations.is_empty(), "disagreement: {:?}", report.violations);
        checked += report.checked;
    }

    // All 16 binary tables on {0, 1}, all 4^4 assignments over the four
    // pairs, terms to size 5.
    let pairs: Vec<Value> = (0..4)
        .map(|p| Value::pair(Value::nat(p / 2), Value::nat(p % 2)))
        .collect();
    for code in 0..16 {
        let inner = AlgebraSpec::Table(two_element_table(code));
        let paired = AlgebraSpec::pair(inner.clone()).expect("single binary");
        for combo in 0..4u32.pow(4) {
            let values: Vec<Value> =
                (0..4).map(|slot| pairs[((combo >> (2 * slot)) & 3) as usize].clone()).collect();
            let b = AssignmentPrefix::new(&paired, values).expect("pairs in universe");
            let report = check_theorem_0107b(&inner, &b, &TermBounds::new(5, 3))
                .expect("routes evaluate");
            assert!(
                report.violations.is_empty(),
                "table {code}, assignment {b}: {:?}",
                report.violations,
            );
            checked += report.checked;
        }
    }
    pass(3, &format!("both routes agree on {checked} term evaluations, 0 differences"));
}

// === Criterion 4: pairing is nowhere associative ===

#[test]
fn criterion_4_nowhere_associative() {
    let paired = AlgebraSpec::pair(AlgebraSpec::NatAdd).expect("single binary");
    let coords: Vec<u64> = (1..=5).collect();
    let mut triples = 0u64;
    let mut associative = 0u64;
    for &p1 in &coords {
        for &p2 in &coords {
            for &q1 in &coords {
                for &q2 in &coords {
                    for &r1 in &coords {
                        for &r2 in &coords {
                            let p = Value::pair(Value::nat(p1), Value::nat(p2));
                            let q = Value::pair(Value::nat(q1), Value::nat(q2));
                            let r = Value::pair(Value::nat(r1), Value::nat(r2));
                            let pq = paired.apply("f", &[p.clone(), q.clone()]).expect("pairs");
                            let qr = paired.apply("f", &[q, r.clone()]).expect("pairs");
                            let left = paired.apply("f", &[pq, r]).expect("pairs");
                            let right = paired.apply("f", &[p, qr]).expect("pairs");
                            triples += 1;
                            if left == right {
                                associative += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert_eq!(triples, 15625);
    assert_eq!(associative, 0, "{associative} associative triples found");
    pass(4, &format!("all {triples} coordinate triples non-associative"));
}

// === Criterion 5: natural addition is an orderly semigroup ===

#[test]
fn criterion_5_orderly_semigroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1211b);
    let bounds = TermBounds::new(7, 7);
    let mut chains = 0u64;
    let mut groups = 0u64;
    for _ in 0..20 {
        let a: Vec<u64> = (0..8).map(|_| rng.random_range(1..=100)).collect();
        let view = OrderlyAlgebraView::induced(
            AlgebraSpec::NatAdd,
            AssignmentPrefix::nats(&a).expect("positive"),
        );
        let report = view.check_semigroup(&bounds).expect("evaluates");
        assert!(report.is_semigroup(), "assignment {a:?}: {report:?}");
        chains += report.associativity_checked;
        groups += report.variable_set_checked;
    }

    // The free view fails bracketing immediately, on the very first chain.
    let free = OrderlyAlgebraView::free(Signature::single_binary());
    let report = free.check_semigroup(&TermBounds::new(3, 4)).expect("evaluates");
    assert!(!report.is_semigroup());
    let first = &report.associativity_violations[0];
    assert_eq!(
        first.chain.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        ["v0", "v1", "v2"],
        "free view failed later than the first triple",
    );
    pass(
        5,
        &format!(
            "20 random assignments pass ({chains} chains, {groups} terms by variable set); \
             free view fails at ⟨v0, v1, v2⟩"
        ),
    );
}

// === Criterion 6: the parity coloring obstructs every free reduction ===

#[test]
fn criterion_6_obstruction() {
    let free = OrderlyAlgebraView::free(Signature::single_binary());
    let report =
        verify_one_to_one_obstruction(&free, 3, &TermBounds::new(5, 8)).expect("injective");
    assert!(report.checked > 0);
    assert!(
        report.violations.is_empty(),
        "{} witnesses were not obstructed",
        report.violations.len(),
    );
    pass(6, &format!("all {} admissible prefixes obstructed (100%)", report.checked));
}

// === Criterion 7: reconstruction round-trips ===

#[test]
fn criterion_7_reconstruction_round_trip() {
    let sig = Signature::single_binary();
    let bounds = TermBounds::new(5, 2);
    let terms = enumerate_terms(&sig, &bounds);

    let mut tables: Vec<TableAlgebra> = (0..16).map(two_element_table).collect();
    tables.push(three_element_table());

    let mut round_trips = 0u64;
    let mut faults = 0u64;
    for table in &tables {
        let alg = AlgebraSpec::Table(table.clone());
        let universe: Vec<Value> = table.universe().to_vec();
        let n = universe.len();

        // Every assignment of length 3 over the universe.
        for combo in 0..n.pow(3) {
            let values: Vec<Value> = (0..3)
                .map(|slot| universe[combo / n.pow(slot) % n].clone())
                .collect();
            let a = AssignmentPrefix::new(&alg, values).expect("in universe");
            let view = OrderlyAlgebraView::induced(alg.clone(), a.clone());
            let rebuilt = view
                .reconstruct_algebra(&bounds, None, DEFAULT_UNIVERSE_CAP)
                .expect("induced views are congruences");
            let again = OrderlyAlgebraView::induced(AlgebraSpec::Table(rebuilt), a.clone());
            for t in &terms {
                assert_eq!(
                    view.value(t).expect("evaluates"),
                    again.value(t).expect("evaluates"),
                    "round trip changed {t} under {a}",
                );
            }
            round_trips += 1;
        }

        // Injected fault: assign ⟨u0, u1, u1⟩ and override f v0 v1 with a
        // wrong value; the chain ⟨v0, v2⟩ still answers correctly, so the
        // value tuple (u0, u1) is seen with two different results.
        let a = AssignmentPrefix::new(
            &alg,
            vec![universe[0].clone(), universe[1].clone(), universe[1].clone()],
        )
        .expect("in universe");
        let honest = alg
            .apply("f", &[universe[0].clone(), universe[1].clone()])
            .expect("total");
        let wrong = universe
            .iter()
            .find(|v| **v != honest)
            .expect("at least two elements")
            .clone();
        let faulty = OrderlyAlgebraView::induced(alg.clone(), a)
            .with_override(OrderlyTerm::parse("f v0 v1", &sig).expect("orderly"), wrong);
        let report = faulty.check_congruence(&TermBounds::new(3, 2)).expect("evaluates");
        assert!(!report.is_congruent(), "fault in {table:?} went undetected");
        faults += 1;
    }
    pass(
        7,
        &format!("{round_trips} reconstruction round trips exact; {faults}/{faults} injected faults detected"),
    );
}

// === Criterion 8: Hindman searches match the brute-force oracle ===

#[test]
fn criterion_8_hindman_desk_scale() {
    let start = Instant::now();
    let a: Vec<u64> = (1..=12).collect();
    let view = OrderlyAlgebraView::induced(
        AlgebraSpec::NatAdd,
        AssignmentPrefix::nats(&a).expect("positive"),
    );
    let config = SearchConfig::new(3, 5, 11, 5);
    let probes = common::orderly_terms(5, 2);

    for modulus in [2u64, 3] {
        let coloring = Coloring::residue(modulus, [0]).expect("modulus >= 2");
        let outcome =
            find_homogeneous_reduction(&view, &coloring, &config).expect("searchable");
        let SearchOutcome::Found { witness, side, certificate } = outcome else {
            panic!("mod {modulus}: expected Found, got {outcome:?}");
        };

        // First witness must be the oracle's, entry for entry.
        let oracle =
            common::hindman_oracle(&a, modulus, &[0], 3, 5, 5).expect("oracle finds one");
        let witness_texts: Vec<String> =
            witness.terms().iter().map(|t| t.to_string()).collect();
        assert_eq!(witness_texts, oracle.witness, "mod {modulus}: wrong first witness");
        assert_eq!(
            side,
            if oracle.contained { Side::Contained } else { Side::Disjoint },
            "mod {modulus}: wrong side",
        );

        // Soundness: recompute every certificate entry by leaf sums and
        // re-judge homogeneity from scratch.
        let entry_values: Vec<u64> =
            oracle.witness.iter().map(|t| common::nat_sum(t, &a)).collect();
        assert_eq!(certificate.entries().len(), probes.len());
        for (entry, probe) in certificate.entries().iter().zip(&probes) {
            assert_eq!(entry.term.to_string(), probe.text);
            let value = common::nat_sum(&probe.text, &entry_values);
            assert_eq!(entry.value, Value::nat(value), "certificate lies at {}", probe.text);
            assert_eq!(value % modulus == 0, oracle.contained, "not homogeneous");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:.1?}");
    pass(8, &format!("mod 2 and mod 3 searches match the oracle, sound certificates, {elapsed:.1?}"));
}

// === Criterion 9: search output is independent of thread count ===

#[test]
fn criterion_9_search_determinism() {
    let exe = env!("CARGO_BIN_EXE_orderly");
    let base_args = [
        "search", "hindman", "--algebra", "nat-add",
        "--assignment", "[1,2,3,4,5,6,7,8,9,10,11,12]",
        "--mod", "2", "--accept", "0", "--k", "3", "--max-size", "5", "--fr-size", "5",
    ];

    let mut stdouts: Vec<String> = Vec::new();
    let mut manifests: Vec<serde_json::Value> = Vec::new();
    for threads in ["1", "8"] {
        for _ in 0..10 {
            let out = Command::new(exe)
                .args(base_args)
                .args(["--threads", threads])
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "search failed: {out:?}");
            stdouts.push(String::from_utf8(out.stdout).expect("utf-8"));
            let stderr = String::from_utf8(out.stderr).expect("utf-8");
            let line = stderr
                .lines()
                .find_map(|l| l.strip_prefix("manifest: "))
                .expect("manifest on stderr");
            let mut manifest: serde_json::Value = serde_json::from_str(line).expect("json");
            let fields = manifest.as_object_mut().expect("object");
            fields.remove("wall_ms");
            fields.remove("command"); // differs by the --threads token itself
            manifests.push(manifest);
        }
    }
    assert!(
        stdouts.iter().all(|s| s == &stdouts[0]),
        "stdout differs between runs or thread counts",
    );
    assert!(
        manifests.iter().all(|m| m == &manifests[0]),
        "manifests differ beyond wall time",
    );
    let report: serde_json::Value = serde_json::from_str(&stdouts[0]).expect("json");
    assert_eq!(report["outcome"], "found");
    pass(9, "20 runs across --threads 1 and 8: identical stdout and manifests");
}

// === Criterion 10: reducing the view is reducing the sequence ===

#[test]
fn criterion_10_reduction_correspondence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2008a);
    let sig = Signature::single_binary();
    for round in 0..100 {
        // A random total binary table on 2 or 3 elements.
        let n = rng.random_range(2..=3u64);
        let universe: Vec<Value> = (0..n).map(Value::nat).collect();
        let entries = universe
            .iter()
            .flat_map(|i| universe.iter().map(move |j| (i.clone(), j.clone())))
            .map(|(i, j)| (vec![i, j], Value::nat(rng.random_range(0..n))))
            .collect();
        let table = TableAlgebra::new(universe.clone(), vec![("f".to_string(), 2, entries)])
            .expect("total table");
        let alg = AlgebraSpec::Table(table);

        let len = rng.random_range(3..=5usize);
        let values: Vec<Value> =
            (0..len).map(|_| universe[rng.random_range(0..universe.len())].clone()).collect();
        let a = AssignmentPrefix::new(&alg, values).expect("in universe");

        let witnesses: Vec<AdmissiblePrefix> = (1..=3)
            .flat_map(|k| admissible_prefixes(&sig, k, &TermBounds::new(3, len as u32 - 1)))
            .collect();
        let witness = &witnesses[rng.random_range(0..witnesses.len())];

        let through_view = OrderlyAlgebraView::induced(alg.clone(), a.clone())
            .reduce(witness)
            .induced_sequence(witness.len())
            .expect("covered");
        let through_sequence = reduce_sequence(&alg, &a, witness).expect("covered");
        assert_eq!(through_view, through_sequence, "round {round}: routes disagree");
    }
    pass(10, "100 random (algebra, assignment, witness) triples agree entry-for-entry");
}
