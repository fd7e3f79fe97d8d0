//! Exhaustive and sampled censuses of type I involutions over finite fields.
//!
//! `cargo run --release --example census -- 13 4` runs the exhaustive census
//! over F_13 on four threads.

use f4_albert::classify::{census, CensusMode, EXHAUSTIVE_LIMIT};
use f4_albert::Field;

fn main() -> f4_albert::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let jobs: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let k = Field::finite(p)?;
    let mode = if p <= EXHAUSTIVE_LIMIT { CensusMode::Exhaustive } else { CensusMode::Sampled { samples: 500, seed: 1 } };
    let report = census(k, mode, jobs)?;
    println!("{} over {}: {} torus elements", report.mode, report.field, report.total);
    for (class, n) in &report.histogram {
        println!("  {class}: {n}");
    }
    for (d, n) in &report.fixed_dims {
        println!("  fixed dimension {d}: {n}");
    }
    Ok(())
}
