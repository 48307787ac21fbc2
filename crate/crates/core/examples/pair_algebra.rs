//! Pairing an algebra mirrors the sharp of its induced view.

use orderly_algebra::{
    check_theorem_0107b, interleave_pairs, AlgebraSpec, AssignmentPrefix, OrderlyAlgebraView,
    OrderlyTerm, TermBounds, Value,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The paired algebra lives on pairs and applies the inner operation
    // inside each argument: f((a,b),(c,d)) = (a+b, c+d) over nat-add.
    let paired = AlgebraSpec::pair(AlgebraSpec::NatAdd)?;
    let p = Value::pair(Value::nat(1), Value::nat(2));
    let q = Value::pair(Value::nat(10), Value::nat(20));
    println!("f({p}, {q}) = {}", paired.apply("f", &[p.clone(), q.clone()])?);

    // Two routes to a value for each term: induce over the pairs directly,
    // or interleave the components and sharp the flat induced view. They
    // agree on every covered term.
    let b = AssignmentPrefix::new(&paired, vec![
        p,
        q,
        Value::pair(Value::nat(100), Value::nat(200)),
    ])?;
    let flat = interleave_pairs(&b)?;
    println!("pair assignment: {b}");
    println!("interleaved:     {flat}");

    let direct = OrderlyAlgebraView::induced(paired, b.clone());
    let sharped = OrderlyAlgebraView::induced(AlgebraSpec::NatAdd, flat).sharp()?;
    let term = OrderlyTerm::parse("f v0 f v1 v2", &direct.signature().clone())?;
    println!();
    println!("direct route:  {term} = {}", direct.value(&term)?);
    println!("sharped route: {term} = {}", sharped.value(&term)?);

    let report = check_theorem_0107b(&AlgebraSpec::NatAdd, &b, &TermBounds::new(5, 2))?;
    println!(
        "agreement over {} terms: {} violations",
        report.checked,
        report.violations.len(),
    );
    Ok(())
}
