//! Split octonions: the multiplication table, the norm, and a quaternion
//! subalgebra with prescribed norm form.

use f4_albert::octonion::{OctonionAlgebra, BASIS_NAMES};
use f4_albert::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> f4_albert::Result<()> {
    let k: Field = "Q".parse()?;
    let o = OctonionAlgebra::new(k);

    println!("multiplication table (row * column):");
    print!("{:>4}", "");
    for n in BASIS_NAMES {
        print!("{n:>5}");
    }
    println!();
    for (a, row_name) in BASIS_NAMES.iter().enumerate() {
        print!("{row_name:>4}");
        for b in 0..8 {
            let p = o.basis(a).mul(&o.basis(b));
            let (idx, c) = p.coords().iter().enumerate().find(|(_, c)| !c.is_zero()).expect("nonzero product");
            let sign = if c.is_one() { "" } else { "-" };
            print!("{:>5}", format!("{sign}{}", BASIS_NAMES[idx]));
        }
        println!();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (x, y) = (o.random(&mut rng), o.random(&mut rng));
    println!("\nx = {x:?}\ny = {y:?}");
    println!("q(x) q(y) = {}", &x.norm() * &y.norm());
    println!("q(xy)     = {}", x.mul(&y).norm());

    let d = o.embed_quaternion(&k.from_i64(-1), &k.from_i64(-1))?;
    println!("\nquaternion subalgebra with norm form {}:", d.pfister());
    for b in d.basis() {
        println!("  {b:?}");
    }
    println!("closed under multiplication: {}", d.is_closed());
    println!("split over Q: {}", o.is_split_quaternion(&d)?);
    println!("doubling element j = {:?}, q(j) = {}", d.j(), d.q_j());
    Ok(())
}
