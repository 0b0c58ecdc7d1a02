//! Cyclic resultants of the running example at increasing levels, checked
//! against the Sylvester-matrix baseline where that is still fast.
//!
//! cargo run --release --example cyclic_resultant -- [kmax]

use std::time::Instant;

use amoeba::cycres::{iterated_resultant_baseline, quick_cyclic_resultant};
use amoeba::poly::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kmax: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(6);
    let f = parse("z1^3 + z1*z2 + z2^3 + 1", 2)?;
    println!("f = {f}");
    println!("cres(f; 4) = {}", quick_cyclic_resultant(&f, 2)?);
    println!();
    println!(
        "{:>3} {:>6} {:>8} {:>7} {:>10}  baseline",
        "k", "r", "terms", "degree", "digits"
    );
    for k in 1..=kmax {
        let t = Instant::now();
        let g = quick_cyclic_resultant(&f, k)?;
        let secs = t.elapsed().as_secs_f64();
        let check = if k <= 3 {
            if iterated_resultant_baseline(&f, 1 << k)? == g {
                "equal"
            } else {
                "DIFFERENT"
            }
        } else {
            "-"
        };
        println!(
            "{k:>3} {:>6} {:>8} {:>7} {:>10}  {check}   ({secs:.4}s)",
            1u32 << k,
            g.num_terms(),
            g.total_degree().unwrap_or(0),
            g.max_abs_numerator().to_string().len(),
        );
    }
    Ok(())
}
