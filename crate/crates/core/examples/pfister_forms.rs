//! Hilbert symbols and 2-fold Pfister forms over the supported fields.

use f4_albert::forms::{hilbert_symbol, pfister_equivalent, pfister_is_split, square_class, Pfister2, SquareClass};
use f4_albert::Field;

fn main() -> f4_albert::Result<()> {
    for spec in ["R", "Qp:2", "Qp:3", "Qp:5"] {
        let k: Field = spec.parse()?;
        let classes: Vec<String> = SquareClass::group(k).unwrap_or_default().iter().map(ToString::to_string).collect();
        println!("{k}: square classes {{{}}}", classes.join(", "));
        let vals = [-1, 2, 3, 5, -6];
        for a in vals {
            let row: Vec<String> = vals
                .iter()
                .map(|&b| format!("{:>3}", hilbert_symbol(&k.from_i64(a), &k.from_i64(b), k).unwrap()))
                .collect();
            println!("  ({a:>2}, b) for b in {vals:?}: {}", row.join(""));
        }
    }

    let q = Field::rationals();
    println!("\nquaternion algebras over Q:");
    for (z, e) in [(-1, -1), (-1, 3), (2, 5), (1, 7), (-1, 7)] {
        let f = Pfister2::new(q.from_i64(z), q.from_i64(e))?;
        let places: Vec<String> = f.ramified_places()?.iter().map(ToString::to_string).collect();
        println!("  {f}: split {}, ramified at {{{}}}", pfister_is_split(&f, q)?, places.join(", "));
    }
    let a = Pfister2::new(q.from_i64(-1), q.from_i64(-1))?;
    let b = Pfister2::new(q.from_i64(-2), q.from_i64(-5))?;
    println!("  {a} ~ {b}: {}", pfister_equivalent(&a, &b, q)?);
    println!("  square class of 12/7 over Q: {}", square_class(&q.from_frac(12, 7)?, q)?);
    Ok(())
}
