//! Search for reductions homogeneous for residue colorings of sums.

use orderly_algebra::{
    find_homogeneous_reduction, find_tuple_homogeneous, AlgebraSpec, AssignmentPrefix, Coloring,
    OrderlyAlgebraView, SearchConfig, SearchOutcome, TupleColoring, TupleSearchOutcome,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Color the naturals by residue and ask for a witness all of whose
    // finite sums land on one side.
    let view = OrderlyAlgebraView::induced(
        AlgebraSpec::NatAdd,
        AssignmentPrefix::nats(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12])?,
    );
    let config = SearchConfig::new(3, 5, 11, 5);

    for modulus in [2, 3] {
        let coloring = Coloring::residue(modulus, [0])?;
        match find_homogeneous_reduction(&view, &coloring, &config)? {
            SearchOutcome::Found { witness, side, certificate } => {
                println!("mod {modulus}: witness {witness} ({side:?})");
                for entry in certificate.entries() {
                    println!("    {} = {}", entry.term, entry.value);
                }
            }
            other => println!("mod {modulus}: {other:?}"),
        }
    }

    // Tuple searches color value tuples along <-ordered probe chains; a
    // component coloring lifts a scalar coloring to one coordinate.
    let coloring = TupleColoring::component(1, Coloring::residue(2, [0])?);
    match find_tuple_homogeneous(&view, &coloring, 2, &config)? {
        TupleSearchOutcome::Found { witness, side, certificate } => {
            println!();
            println!("pairs, second coordinate even: witness {witness} ({side:?})");
            for entry in certificate.entries() {
                let terms: Vec<_> = entry.terms.iter().map(|t| t.to_string()).collect();
                let values: Vec<_> = entry.values.iter().map(|v| v.to_string()).collect();
                println!("    {:?} = {:?}", terms, values);
            }
        }
        other => println!("pairs: {other:?}"),
    }
    Ok(())
}
