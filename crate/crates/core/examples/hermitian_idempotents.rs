//! The Hermitian model H3(C, gamma): Jordan products, idempotents and
//! their Peirce spaces.

use f4_albert::algebra::{self, AlbertAlgebra};
use f4_albert::forms::GammaTriple;
use f4_albert::hermitian::{HermitianAlgebra, HermitianElement};
use f4_albert::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> f4_albert::Result<()> {
    let k: Field = "Q".parse()?;
    let h = HermitianAlgebra::new(k, GammaTriple::from_ints(k, [1, 2, 3])?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let x = h.random_element(&mut rng).to_coords();
    let y = h.random_element(&mut rng).to_coords();
    for (name, ok) in algebra::jordan_checks(&h, &x, &y) {
        println!("{name}: {ok}");
    }

    let diag = HermitianElement::diagonal(&k, [1, 0, 0]);
    let w = h.random_primitive_idempotent(&mut rng);
    for (label, e) in [("diag(1,0,0)", &diag), ("random conjugate", &w), ("e - w", &h.identity().sub(&w))] {
        println!("\n{label}: Q = {}", h.quadratic_norm(e));
        for (name, ok) in h.idempotent_lemma_checks(e) {
            println!("  {name:<24} {ok}");
        }
    }

    let peirce = h.peirce_decompose(&w)?;
    println!("\nPeirce dimensions of w: {:?}", peirce.dims());
    let mut zero_space = peirce.e0.clone();
    zero_space.push(peirce.complement.clone());
    println!("k(e - w) + E0 is a subalgebra: {}", algebra::is_subalgebra(&h, &zero_space));
    println!("derivation algebra dimension: {}", h.derivations()?.dim());
    Ok(())
}
