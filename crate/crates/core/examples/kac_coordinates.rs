//! Kac coordinates on the extended F4 diagram and the centralizer types
//! they predict.

use f4_albert::kac::{centralizer_subdiagram, cross_check_with_classifier, enumerate};
use f4_albert::Field;

fn main() -> f4_albert::Result<()> {
    for order in 1..=4 {
        println!("order {order}:");
        for s in enumerate(order) {
            let ty = centralizer_subdiagram(&s)?;
            println!("  rho = {:?}  centralizer {ty} (dim {})", s.rho, ty.dimension());
        }
    }
    let report = cross_check_with_classifier(Field::alg_closed_default())?;
    println!("\ninvolutions over {}:", report.field);
    for row in &report.rows {
        println!("  {:?} {} <-> {} (centralizer dim {})", row.rho, row.dynkin, row.involution, row.centralizer_dimension);
    }
    println!("bijective: {}", report.bijective);
    Ok(())
}
