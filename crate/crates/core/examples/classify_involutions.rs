//! Isomorphism classes of type I involutions over finite, real, p-adic and
//! rational fields.

use f4_albert::classify::{class_count, classify, invariant_of, rational_distinct_family, representatives, InvolutionType};
use f4_albert::Field;

fn main() -> f4_albert::Result<()> {
    for spec in ["C", "Fp:7", "R", "Qp:2", "Qp:3", "Qp:7"] {
        let k: Field = spec.parse()?;
        println!("{k}: {} type I classes, {} type II", class_count(k, InvolutionType::TypeI), class_count(k, InvolutionType::TypeII));
        for t in representatives(k)? {
            let inv = invariant_of(&t, k)?;
            println!("  {t}: D = {}, gamma = {}, class {}", inv.pfister, inv.gamma, classify(&t, k)?);
        }
    }

    let q = Field::rationals();
    println!("{q}: {} type I classes, for instance", class_count(q, InvolutionType::TypeI));
    for (t, class) in rational_distinct_family(&[3, 7, 11, 19, 23])? {
        println!("  {t}: {class}");
    }
    if let Err(e) = representatives(q) {
        println!("  representatives: {e}");
    }
    Ok(())
}
