//! List orderly terms and admissible prefixes in canonical order.

use orderly_algebra::{admissible_prefixes, enumerate_terms, Signature, TermBounds};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::single_binary();

    // Canonical order is (size, rendered text); every enumeration and
    // search in the crate shares it, so first hits are reproducible.
    let terms = enumerate_terms(&sig, &TermBounds::new(5, 3));
    println!("{} orderly terms of size <= 5 over v0..v3:", terms.len());
    for t in &terms {
        println!("  {t}");
    }

    // An admissible prefix is a nonempty <-increasing sequence of orderly
    // terms: consecutive entries use disjoint, increasing variable windows.
    let prefixes: Vec<_> = admissible_prefixes(&sig, 2, &TermBounds::new(3, 2)).collect();
    println!();
    println!("{} admissible prefixes of length 2 from terms of size <= 3 over v0..v2:", prefixes.len());
    for p in &prefixes {
        println!("  {p}");
    }
    Ok(())
}
