//! Automorphisms f_{u,v}, the involution theta, and the witness reported
//! when a map fails to be an automorphism.

use f4_albert::automorphism::{check_automorphism, f_uv, theta, AutCheck, TorusElement};
use f4_albert::tits::{parse_mat3, TitsAlgebra};
use f4_albert::Field;

fn main() -> f4_albert::Result<()> {
    let k: Field = "Fp:101".parse()?;
    let alg = TitsAlgebra::new(k);

    let u = parse_mat3(&k, "1,2,0;0,1,0;3,0,1")?;
    let v = parse_mat3(&k, "7,0,0;0,1,0;0,0,1")?;
    let v_fixed = parse_mat3(&k, "7,0,0;0,1,0;0,0,1/7")?;
    println!("det u = {}, det v = {}", u.det(), v.det());
    report("f_(u,v)", check_automorphism(&alg, &f_uv(&alg, &u, &v)?)?);
    println!("det v' = {}", v_fixed.det());
    report("f_(u,v')", check_automorphism(&alg, &f_uv(&alg, &u, &v_fixed)?)?);

    let th = theta(&alg)?;
    report("theta", check_automorphism(&alg, &th)?);
    println!("theta is an involution: {}", th.is_involution());

    let t = TorusElement::parse(&k, "2,3,5,7")?;
    let g = th.compose(&t.to_map(&alg));
    println!("{t}: theta f_t squares to the identity: {}", g.compose(&g).is_identity());
    println!("theta f_t theta = f_(t^-1): {}", th.compose(&t.to_map(&alg)).compose(&th).matrix() == t.inverse().to_map(&alg).matrix());
    Ok(())
}

fn report(name: &str, verdict: AutCheck) {
    match verdict {
        AutCheck::Pass => println!("{name}: automorphism"),
        AutCheck::Fail { kind, witness, .. } => {
            let nz: Vec<usize> = witness.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
            println!("{name}: {kind} (witness supported on basis vectors {nz:?})");
        }
    }
}
