//! Reduce an assignment sequence by an admissible prefix.

use orderly_algebra::{
    finite_reductions, reduce_sequence, AdmissiblePrefix, AlgebraSpec, AssignmentPrefix,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = AlgebraSpec::NatAdd;
    let sig = alg.signature();
    let a = AssignmentPrefix::nats(&[1, 2, 3, 4, 5, 6])?;
    println!("assignment: {a}");

    // Each witness entry evaluates under the original assignment; the
    // results form the reduced assignment.
    let witness = AdmissiblePrefix::parse(&["v0", "f v1 v2", "f v3 f v4 v5"], &sig)?;
    let reduced = reduce_sequence(&alg, &a, &witness)?;
    println!("reduced by {witness}: {reduced}");

    // Reducing the reduction is one reduction by a composed witness.
    let again = AdmissiblePrefix::parse(&["f v0 v1", "v2"], &sig)?;
    let twice = reduce_sequence(&alg, &reduced, &again)?;
    let composed = again.compose(&witness)?;
    println!("then by {again}:      {twice}");
    println!("by composed {composed}: {}", reduce_sequence(&alg, &a, &composed)?);

    // The finite reduction set FR_n collects the values of every orderly
    // term up to size n; homogeneity of a reduction is judged over it.
    let fr = finite_reductions(&alg, &reduced, 3)?;
    println!();
    println!("FR_3 of the reduced assignment:");
    for entry in fr.entries() {
        println!("  {} = {}", entry.term, entry.value);
    }
    println!("distinct values: {:?}", fr.values().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    Ok(())
}
