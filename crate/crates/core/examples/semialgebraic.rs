//! Semi-algebraic descriptions of unlog amoebas and their rasterized
//! boundaries at levels 1, 2 and 3.
//!
//! cargo run --release --example semialgebraic -- [out.svg]

use amoeba::poly::parse;
use amoeba::semialg::{overlay_svg, rasterize, semialg_description, RasterBox};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "unlog_levels.svg".into());

    let line = parse("z1 + z2 + 1", 2)?;
    let sys = semialg_description(&line, 1, None)?;
    println!("{line}, level 1:");
    print!("{}", sys.pretty());
    println!();

    let f = parse("z1^3 + z2^3 + 2*z1*z2 + 1", 2)?;
    let bbox = RasterBox::square(0.05, 3.0);
    let mut rasters = Vec::new();
    for k in 1..=3 {
        let sys = semialg_description(&f, k, None)?;
        let raster = rasterize(&sys, bbox, 400)?;
        let inside = raster.inside.iter().filter(|&&b| b).count();
        println!(
            "{f}, level {k}: {} inequalities, {inside} of {} samples inside",
            sys.candidates.len(),
            raster.inside.len()
        );
        rasters.push(raster);
    }
    let layers: Vec<_> = rasters.iter().zip(["blue", "darkgreen", "red"]).collect();
    std::fs::write(&out, overlay_svg(&layers, 800))?;
    println!("wrote {out}");
    Ok(())
}
