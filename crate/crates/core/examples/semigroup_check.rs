//! Which views are orderly semigroups: associativity over <-chains plus
//! dependence on variable sets only.

use orderly_algebra::{
    AlgebraSpec, AssignmentPrefix, OrderlyAlgebraView, Signature, TermBounds, Value,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::single_binary();
    let bounds = TermBounds::new(5, 4);

    let views = [
        ("nat-add", OrderlyAlgebraView::induced(AlgebraSpec::NatAdd, AssignmentPrefix::nats(&[1, 2, 3, 4, 5])?)),
        ("constant", OrderlyAlgebraView::constant(sig.clone(), Value::nat(9))),
        ("index set", OrderlyAlgebraView::index_set(sig.clone())),
        ("free", OrderlyAlgebraView::free(sig.clone())),
    ];

    for (name, view) in &views {
        let report = view.check_semigroup(&bounds)?;
        println!(
            "{name}: semigroup = {} ({} associativity chains, {} violations; {} terms by variable set, {} violations)",
            report.is_semigroup(),
            report.associativity_checked,
            report.associativity_violations.len(),
            report.variable_set_checked,
            report.variable_set_violations.len(),
        );
    }

    // The free view distinguishes the two bracketings of any chain, so its
    // first violation is the smallest <-chain there is.
    let free = &views[3].1;
    let report = free.check_semigroup(&bounds)?;
    let v = &report.associativity_violations[0];
    println!();
    println!("first free-view violation, on the chain {:?}:", v.chain.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    println!("  {}  ->  {}", v.left, v.left_value);
    println!("  {}  ->  {}", v.right, v.right_value);
    Ok(())
}
