//! Why no reduction of the free view is one-to-one: a parity coloring
//! obstructs every witness.

use orderly_algebra::{
    check_injectivity, verify_one_to_one_obstruction, AlgebraSpec, AssignmentPrefix,
    OrderlyAlgebraView, SearchError, Signature, TermBounds,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::single_binary();
    let free = OrderlyAlgebraView::free(sig.clone());
    let bounds = TermBounds::new(3, 5);

    // Color a value by the parity of its term's leading run of f's. For any
    // witness ⟨t0, t1, …⟩, the head t0 and the application f t0 t1 always
    // sit on opposite sides, so no reduction is homogeneous — and a
    // one-to-one reduction would have to be.
    let report = verify_one_to_one_obstruction(&free, 3, &bounds)?;
    println!("coloring: {}", report.coloring.to_json());
    println!(
        "witnesses checked: {}, unobstructed: {}",
        report.checked,
        report.violations.len(),
    );

    // The pullback only exists for views that keep both parities apart.
    // Natural addition does not: the two bracketings of v0+v1+v2 share a
    // value but lead with different runs of f.
    let collapsing = OrderlyAlgebraView::induced(
        AlgebraSpec::NatAdd,
        AssignmentPrefix::nats(&[1, 2, 4, 8, 16, 32])?,
    );
    match verify_one_to_one_obstruction(&collapsing, 3, &bounds) {
        Err(SearchError::NotInjective { value, even, odd }) => {
            println!();
            println!("nat-add refuses: `{even}` and `{odd}` both map to {value}");
        }
        other => println!("unexpected: {other:?}"),
    }

    // Injectivity itself is a separate, direct check; the bracketing
    // collision needs size-5 terms to show up.
    let report = check_injectivity(&collapsing, &TermBounds::new(5, 5))?;
    println!(
        "injectivity over {} terms: {} collisions, first: {} = {} = {}",
        report.checked,
        report.collisions.len(),
        report.collisions[0].first,
        report.collisions[0].second,
        report.collisions[0].value,
    );
    Ok(())
}
