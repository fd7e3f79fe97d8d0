//! The first Tits construction J(Mat3(k), nu): norm, adjoint, trace and
//! the identities that make it a Jordan algebra of degree 3.

use f4_albert::tits::{associative_cubic_checks, Mat3, TitsAlgebra};
use f4_albert::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> f4_albert::Result<()> {
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let m = Mat3::random(&q, &mut rng);
    println!("m = {m:?}");
    for (name, ok) in associative_cubic_checks(&q, &m) {
        println!("  {name:<32} {ok}");
    }

    for nu in [1, 3, -2] {
        let alg = TitsAlgebra::with_nu(q, q.from_i64(nu))?;
        let x = alg.random_element(&mut rng);
        let y = alg.random_element(&mut rng);
        println!("\nnu = {nu}");
        println!("  N(x) = {}, Tr(x) = {}, Sr(x) = {}", alg.norm(&x), alg.trace(&x), alg.sr(&x));
        for (name, ok) in alg.sharped_axioms(&x, &y) {
            println!("  {name:<22} {ok}");
        }
        println!("  x^3 - Tr(x)x^2 + Sr(x)x - N(x)1 = 0: {}", alg.cubic_residual(&x).is_zero());
        println!("  N(1) = {}", alg.norm(&alg.one()));
    }
    Ok(())
}
