//! Parse prefix terms and check orderliness.

use orderly_algebra::{OrderlyTerm, Signature, Term};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::single_binary();

    for text in ["f v0 f v1 v2", "f v1 v0", "f f v0 v2 f v3 v4", "v7"] {
        let term = Term::parse(text, &sig)?;
        println!(
            "{term}: size {}, variables {:?}, {}",
            term.size(),
            term.variables(),
            if term.is_orderly() { "orderly" } else { "not orderly" },
        );
    }

    // Orderly terms are ordered by their variable windows: s < t when
    // every variable of s has a smaller index than every variable of t.
    let s = OrderlyTerm::parse("f v0 v1", &sig)?;
    let t = OrderlyTerm::parse("f v2 f v3 v4", &sig)?;
    let u = OrderlyTerm::parse("f v1 v3", &sig)?;
    println!();
    println!("{s} < {t}: {}", s.precedes(&t));
    println!("{s} < {u}: {} (windows overlap)", s.precedes(&u));

    // Orderliness is a property of the term, not the signature, so richer
    // signatures work the same way.
    let sig = Signature::new([("g", 1), ("h", 3)])?;
    let term = Term::parse("h g v0 v1 g g v2", &sig)?;
    println!();
    println!("{term}: orderly = {}", term.is_orderly());
    Ok(())
}
