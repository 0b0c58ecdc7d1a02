//! Grid approximation of the amoeba of z1^3 + z2^3 + b*z1*z2 + 1 on [-2,2]^2,
//! colored by the level that first certified each point.
//!
//! cargo run --release --example grid_membership -- [b] [out.svg]

use std::collections::BTreeMap;

use amoeba::grid::{approximate_amoeba, epsilon_for_grid, scatter_svg, GridOptions, GridSpec};
use amoeba::poly::parse;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let b: i64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let out = args.next().unwrap_or_else(|| format!("amoeba_b{b}.svg"));

    let sign = if b < 0 { "-" } else { "+" };
    let f = parse(&format!("z1^3 + z2^3 {sign} {}*z1*z2 + 1", b.abs()), 2)?;
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let spec = GridSpec::new(q(-2, 1), q(2, 1), q(1, 20), 2)?;
    let records = approximate_amoeba(&f, &spec, 4, &GridOptions::default())?;

    let mut by_level: BTreeMap<String, usize> = BTreeMap::new();
    let mut by_order: BTreeMap<String, usize> = BTreeMap::new();
    for r in &records {
        let level = r
            .level
            .map(|l| format!("level {l}"))
            .unwrap_or_else(|| "presumed amoeba".into());
        *by_level.entry(level).or_default() += 1;
        if let Some(o) = &r.order {
            *by_order.entry(format!("{:?}", o.0)).or_default() += 1;
        }
    }
    println!(
        "{f}: {} points, epsilon {:.4}",
        records.len(),
        epsilon_for_grid(&spec)
    );
    for (k, v) in by_level {
        println!("  {k:<16} {v}");
    }
    for (k, v) in by_order {
        println!("  order {k:<10} {v}");
    }
    std::fs::write(&out, scatter_svg(&records, &spec, 810))?;
    println!("wrote {out}");
    Ok(())
}
