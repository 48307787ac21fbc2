//! Recover a finite operation table from an induced view.

use orderly_algebra::{
    AlgebraSpec, AssignmentPrefix, OrderlyAlgebraView, OrderlyTerm, Signature, TableAlgebra,
    TermBounds, Value, DEFAULT_UNIVERSE_CAP,
};

fn z2() -> Result<TableAlgebra, Box<dyn std::error::Error>> {
    let zero = Value::nat(0);
    let one = Value::nat(1);
    Ok(TableAlgebra::new(
        vec![zero.clone(), one.clone()],
        vec![(
            "f".to_string(),
            2,
            vec![
                (vec![zero.clone(), zero.clone()], zero.clone()),
                (vec![zero.clone(), one.clone()], one.clone()),
                (vec![one.clone(), zero.clone()], one.clone()),
                (vec![one.clone(), one.clone()], zero.clone()),
            ],
        )],
    )?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = z2()?;
    let alg = AlgebraSpec::Table(table.clone());

    // The assignment 0,1,1,0 realizes every argument pair on some <-chain
    // of small terms, so tabulating the view recovers the full table.
    let a = AssignmentPrefix::new(&alg, vec![
        Value::nat(0),
        Value::nat(1),
        Value::nat(1),
        Value::nat(0),
    ])?;
    let view = OrderlyAlgebraView::induced(alg, a);
    let bounds = TermBounds::new(5, 3);

    let rebuilt = view.reconstruct_algebra(&bounds, None, DEFAULT_UNIVERSE_CAP)?;
    println!("reconstructed table: {}", rebuilt.to_json());
    println!("matches the original: {}", rebuilt == table);

    // Tabulation is only possible when equal value tuples never disagree.
    // A point override that breaks that is caught, both by reconstruction
    // and by the congruence check.
    let sig = Signature::single_binary();
    let faulty = view.with_override(OrderlyTerm::parse("f v0 v1", &sig)?, Value::nat(0));
    match faulty.reconstruct_algebra(&bounds, None, DEFAULT_UNIVERSE_CAP) {
        Err(e) => println!("\nfaulty view: {e}"),
        Ok(_) => unreachable!("the override conflicts with f(0,1)=1 elsewhere"),
    }
    let report = faulty.check_congruence(&bounds)?;
    println!(
        "congruence check: {} tuples checked, {} violations",
        report.checked,
        report.violations.len(),
    );
    let v = &report.violations[0];
    println!(
        "first violation: f at ({}, {}) gives {} but ({}, {}) gives {}",
        v.values[0], v.values[1], v.left_value, v.values[0], v.values[1], v.right_value,
    );
    Ok(())
}
