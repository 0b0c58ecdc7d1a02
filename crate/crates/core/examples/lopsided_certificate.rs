//! Lopsidedness certificates, the orders they recover, and the level needed
//! for a target accuracy.

use amoeba::cycres::quick_cyclic_resultant;
use amoeba::lopsided::{
    choose_level, effective_degree, is_lopsided, order_from_certificate, LogPoint,
};
use amoeba::poly::parse;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hole = parse("z1^3 + z2^3 - 4*z1*z2 + 1", 2)?;
    let origin = LogPoint::from_ints(&[0, 0]);
    let cert = is_lopsided(&hole, &origin)?;
    println!(
        "{hole} at w = (0,0): lopsided {} margin {:.4}",
        cert.lopsided, cert.margin
    );
    println!("  order {:?}", order_from_certificate(&cert, 2, 0)?.0);

    // 2*z1*z2 only wins at the origin once the resultant sharpens the picture
    let f = parse("z1^3 + z2^3 + 2*z1*z2 + 1", 2)?;
    let w = LogPoint::new(vec![
        BigRational::new((-1).into(), 10.into()),
        BigRational::new(1.into(), 20.into()),
    ]);
    for k in 0..=4 {
        let g = quick_cyclic_resultant(&f, k)?;
        let cert = is_lopsided(&g, &w)?;
        let order = if cert.lopsided {
            format!("{:?}", order_from_certificate(&cert, 2, k)?.0)
        } else {
            "-".into()
        };
        println!(
            "level {k}: lopsided {:<5} margin {:>9.4} order {order}",
            cert.lopsided, cert.margin
        );
    }

    let d = effective_degree(&f);
    for (num, den) in [(1, 2), (1, 10), (1, 100)] {
        let eps = BigRational::new(num.into(), den.into());
        println!("eps = {eps}: level {}", choose_level(2, d, &eps)?);
    }
    Ok(())
}
