//! Splitting H3(C, gamma) as H3(D, gamma) + Skew3(D, gamma) j along a
//! quaternion subalgebra D.

use f4_albert::decomposition::Decomposition;
use f4_albert::forms::GammaTriple;
use f4_albert::hermitian::HermitianAlgebra;
use f4_albert::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> f4_albert::Result<()> {
    let k: Field = "Fp:5".parse()?;
    let h = HermitianAlgebra::new(k, GammaTriple::from_ints(k, [1, 2, 3])?)?;
    let d = Decomposition::with_pfister(h, &k.from_i64(2), &k.from_i64(3))?;
    println!("D has norm form {} and q(j) = {}", d.quaternions().pfister(), d.quaternions().q_j());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = d.ambient().random_element(&mut rng);
    let (x, y) = d.decompose(&a);
    println!("random element splits as X + Y j with X Hermitian ({}) and Y skew ({})", d.is_hermitian(&x), d.is_skew(&y));
    println!("recombines exactly: {}", d.combine(&x, &y) == a);

    let mut ok = 0;
    for _ in 0..50 {
        let (x, y) = (d.random_hermitian(&mut rng), d.random_skew(&mut rng));
        let (u, v) = (d.random_hermitian(&mut rng), d.random_skew(&mut rng));
        if d.product_identity_holds(&x, &y, &u, &v) && d.is_skew(&d.bullet(&x, &v)) && d.is_hermitian(&d.star(&y, &v)) {
            ok += 1;
        }
    }
    println!("product rule and closure hold on {ok}/50 samples");
    Ok(())
}
