//! Words with a designated variable letter, under concatenation and
//! substituted concatenation.

use orderly_algebra::{
    reduce_sequence, AdmissiblePrefix, AlgebraSpec, AssignmentPrefix, OrderlyAlgebraView,
    TermBounds, Value,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Every word contains the letter v. cat concatenates; catl_a and
    // catr_a substitute a for v in the left (right) word first.
    let alg = AlgebraSpec::variable_words("ab")?;
    let sig = alg.signature();
    println!("signature: {sig}");

    let a = AssignmentPrefix::new(&alg, vec![
        Value::str("va"),
        Value::str("bv"),
        Value::str("avb"),
    ])?;
    println!("assignment: {a}");

    for text in ["cat v0 v1", "catl_a v0 v1", "catr_b v0 v1", "cat v0 catl_a v1 v2"] {
        let witness = AdmissiblePrefix::parse(&[text], &sig)?;
        let reduced = reduce_sequence(&alg, &a, &witness)?;
        println!("  {text}  ->  {reduced}");
    }

    // Substitution happens inside one argument, so the result still
    // contains a v and the algebra is closed. The induced view is a
    // congruence like any other.
    let view = OrderlyAlgebraView::induced(alg, a);
    let report = view.check_congruence(&TermBounds::new(3, 2))?;
    println!();
    println!(
        "congruence: {} tuples checked, {} violations",
        report.checked,
        report.violations.len(),
    );
    Ok(())
}
