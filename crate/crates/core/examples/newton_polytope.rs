//! Newton polytopes: vertices, facets and lattice points.

use amoeba::poly::{newton, parse};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (text, n) in [
        ("z1^3 + z1*z2 + z2^3 + 1", 2),
        ("z1^-1 + z1 + z2^-1 + z2", 2),
        (
            "z1^4*z2 + z1*z2*z3^5 + z1^2*z2^4 + z1*z2^2 + z1*z2*z3 + z1*z2*z3^3 + 1",
            3,
        ),
    ] {
        let f = parse(text, n)?;
        let nd = newton(&f)?;
        println!("{f}");
        println!("  dimension {}", nd.dim);
        println!(
            "  vertices  {}",
            nd.vertices
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        for h in &nd.facets {
            println!("  facet     {:?} . x <= {}", h.normal, h.offset);
        }
        println!("  {} lattice points", nd.lattice_points.len());
        println!();
    }
    Ok(())
}
