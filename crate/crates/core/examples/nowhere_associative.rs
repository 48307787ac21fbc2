//! Pairing natural addition kills associativity at every single triple.

use orderly_algebra::{AlgebraSpec, Value};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let paired = AlgebraSpec::pair(AlgebraSpec::NatAdd)?;

    // f(f(p,q),r) = (p1+p2+q1+q2, r1+r2) but f(p,f(q,r)) = (p1+p2, q1+q2+r1+r2);
    // over positive naturals the first components can never agree.
    let coords = 1..=5u64;
    let mut triples = 0u64;
    let mut associative = 0u64;
    for p1 in coords.clone() {
        for p2 in coords.clone() {
            for q1 in coords.clone() {
                for q2 in coords.clone() {
                    for r1 in coords.clone() {
                        for r2 in coords.clone() {
                            let p = Value::pair(Value::nat(p1), Value::nat(p2));
                            let q = Value::pair(Value::nat(q1), Value::nat(q2));
                            let r = Value::pair(Value::nat(r1), Value::nat(r2));
                            let left = paired
                                .apply("f", &[paired.apply("f", &[p.clone(), q.clone()])?, r.clone()])?;
                            let right = paired.apply("f", &[p, paired.apply("f", &[q, r])?])?;
                            triples += 1;
                            if left == right {
                                associative += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    println!("triples with coordinates 1..=5: {triples}");
    println!("associative among them:        {associative}");

    // One concrete pair of bracketings, for the record.
    let p = Value::pair(Value::nat(1), Value::nat(1));
    let left = paired.apply("f", &[paired.apply("f", &[p.clone(), p.clone()])?, p.clone()])?;
    let right = paired.apply("f", &[p.clone(), paired.apply("f", &[p.clone(), p])?])?;
    println!();
    println!("f(f(p,p),p) = {left}");
    println!("f(p,f(p,p)) = {right}");
    Ok(())
}
