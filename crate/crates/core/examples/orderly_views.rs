//! Induced, constant, free, and reduced views of orderly algebras.

use orderly_algebra::{
    AdmissiblePrefix, AlgebraSpec, AssignmentPrefix, OrderlyAlgebraView, OrderlyTerm, Signature,
    Value,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::single_binary();
    let term = OrderlyTerm::parse("f v0 f v1 v2", &sig)?;

    // A view assigns a value to every orderly term. The induced view
    // evaluates in an algebra under an assignment prefix.
    let induced = OrderlyAlgebraView::induced(
        AlgebraSpec::NatAdd,
        AssignmentPrefix::nats(&[10, 20, 30])?,
    );
    println!("induced:   {term} = {}", induced.value(&term)?);

    // The constant, index-set, and free views need no algebra at all.
    let constant = OrderlyAlgebraView::constant(sig.clone(), Value::nat(7));
    let index_set = OrderlyAlgebraView::index_set(sig.clone());
    let free = OrderlyAlgebraView::free(sig.clone());
    println!("constant:  {term} = {}", constant.value(&term)?);
    println!("index set: {term} = {}", index_set.value(&term)?);
    println!("free:      {term} = {}", free.value(&term)?);

    // Reducing a view by a witness precomposes it with substitution: the
    // reduced view's v0, v1, … are the witness entries.
    let witness = AdmissiblePrefix::parse(&["f v0 v1", "v2"], &sig)?;
    let reduced = induced.reduce(&witness);
    println!();
    println!("witness {witness}");
    println!("reduced view at v0:      {}", reduced.value(&OrderlyTerm::variable(0))?);
    println!("reduced view at f v0 v1: {}", reduced.value(&OrderlyTerm::parse("f v0 v1", &sig)?)?);
    println!("reduced assignment:      {}", reduced.induced_sequence(2)?);

    // Point overrides patch single terms; they shadow whatever the base view
    // would answer.
    let patched = free.with_override(term.clone(), Value::str("patched"));
    println!();
    println!("patched free view: {term} = {}", patched.value(&term)?);
    Ok(())
}
