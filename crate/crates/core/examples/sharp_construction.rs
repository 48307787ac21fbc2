//! Index doubling: split terms, transform witnesses, and check the exact
//! laws connecting them.

use orderly_algebra::{
    refute_reduction_candidates, wrap_identity_report, AdmissiblePrefix, OrderlyAlgebraView,
    OrderlyTerm, Signature, TermBounds,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::single_binary();

    // Splitting sends v_i to (v_2i, v_2i+1) and f s t to (f s^x s^y, f t^x t^y).
    for text in ["v0", "f v0 v1", "f v0 f v1 v2"] {
        let t = OrderlyTerm::parse(text, &sig)?;
        let (x, y) = orderly_algebra::split_term(&t, &sig)?;
        println!("{t}  ->  x: {x}   y: {y}");
    }

    // Wrapping a witness replaces each entry t by f t^x t^y; substituting
    // into the wrapped witness is the same as substituting first and
    // wrapping after, exactly, term by term.
    let witness = AdmissiblePrefix::parse(&["v0", "f v1 v2", "v3"], &sig)?;
    let wrapped = orderly_algebra::wrap_witness(&witness, &sig)?;
    println!();
    println!("witness {witness}");
    println!("wrapped {wrapped}");
    let report =
        wrap_identity_report(&sig, &TermBounds::new(5, 2), 3, &TermBounds::new(3, 5))?;
    println!(
        "wrap identity over {} (term, witness) pairs: {} violations",
        report.checked,
        report.violations.len(),
    );

    // Pairing joins consecutive entries under f; it is the witness-level
    // face of the pair construction.
    let paired = orderly_algebra::pair_witness(&AdmissiblePrefix::identity(4), &sig)?;
    println!();
    println!("pairing ⟨v0, v1, v2, v3⟩ gives {paired}");

    // The x-component of a sharped view looks like it might be a plain
    // reduction of the base view. It is not: no candidate witness survives
    // even one probe.
    let free = OrderlyAlgebraView::free(sig.clone());
    let target = free.reduce(&AdmissiblePrefix::parse(&["v0", "v2"], &sig)?).sharp()?;
    let report = refute_reduction_candidates(
        &target,
        &free,
        2,
        &TermBounds::new(3, 2),
        &TermBounds::new(3, 1),
    )?;
    println!();
    println!(
        "candidate witnesses refuted: {}, survivors: {}",
        report.refuted.len(),
        report.survivors.len(),
    );
    let r = &report.refuted[0];
    println!(
        "e.g. candidate ⟨{}, {}⟩ already differs at {}: {} vs {}",
        r.witness[0], r.witness[1], r.term, r.left, r.right,
    );
    Ok(())
}
