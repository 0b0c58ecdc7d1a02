use std::fmt::Write as _;

use rayon::prelude::*;

use super::{SemiAlgSystem, SemialgError};

const MAX_RESOLUTION: usize = 8192;

/// Axis-aligned rectangle `[x.0, x.1] × [y.0, y.1]` in the open positive quadrant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RasterBox {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl RasterBox {
    pub fn square(lo: f64, hi: f64) -> Self {
        Self {
            x: (lo, hi),
            y: (lo, hi),
        }
    }

    fn valid(&self) -> bool {
        let ok = |(a, b): (f64, f64)| a > 0.0 && b > a && b.is_finite();
        ok(self.x) && ok(self.y)
    }
}

pub type Segment = ((f64, f64), (f64, f64));

/// Membership samples on a `resolution × resolution` lattice of the box.
#[derive(Clone, Debug)]
pub struct Raster {
    pub bbox: RasterBox,
    pub resolution: usize,
    /// Row-major, row 0 at the bottom (`y = bbox.y.0`).
    pub inside: Vec<bool>,
    /// Centers of the cells whose four corners disagree.
    pub boundary: Vec<(f64, f64)>,
    /// Marching-squares pieces of the boundary curve.
    pub segments: Vec<Segment>,
}

impl Raster {
    pub fn sample(&self, i: usize, j: usize) -> bool {
        self.inside[j * self.resolution + i]
    }

    pub fn coord(&self, i: usize, j: usize) -> (f64, f64) {
        let t =
            |k: usize, (a, b): (f64, f64)| a + (b - a) * k as f64 / (self.resolution - 1) as f64;
        (t(i, self.bbox.x), t(j, self.bbox.y))
    }

    /// Grid spacing along each axis.
    pub fn cell_size(&self) -> (f64, f64) {
        let d = (self.resolution - 1) as f64;
        (
            (self.bbox.x.1 - self.bbox.x.0) / d,
            (self.bbox.y.1 - self.bbox.y.0) / d,
        )
    }

    /// Binary PPM: inside shaded, boundary pixels black, outside white.
    pub fn to_ppm(&self) -> Vec<u8> {
        let n = self.resolution;
        let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
        for j in (0..n).rev() {
            for i in 0..n {
                let here = self.sample(i, j);
                let edge = (i + 1 < n && self.sample(i + 1, j) != here)
                    || (j + 1 < n && self.sample(i, j + 1) != here);
                let rgb: [u8; 3] = match (edge, here) {
                    (true, _) => [0, 0, 0],
                    (false, true) => [70, 130, 180],
                    (false, false) => [255, 255, 255],
                };
                out.extend_from_slice(&rgb);
            }
        }
        out
    }
}

/// Samples the system on the box. Rows are evaluated in parallel and
/// assembled in order.
pub fn rasterize(
    sys: &SemiAlgSystem,
    bbox: RasterBox,
    resolution: usize,
) -> Result<Raster, SemialgError> {
    if sys.nvars() != 2 {
        return Err(SemialgError::NotPlanar(sys.nvars()));
    }
    if !bbox.valid() {
        return Err(SemialgError::InvalidBox);
    }
    if !(2..=MAX_RESOLUTION).contains(&resolution) {
        return Err(SemialgError::InvalidResolution {
            cap: MAX_RESOLUTION,
        });
    }
    let n = resolution;
    let axis = |(a, b): (f64, f64)| -> Vec<f64> {
        (0..n)
            .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).ln())
            .collect()
    };
    let lx = axis(bbox.x);
    let ly = axis(bbox.y);
    let rows: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|j| {
            lx.iter()
                .map(|&wx| sys.contains_log_f64(&[wx, ly[j]]))
                .collect()
        })
        .collect();
    let inside: Vec<bool> = rows.into_iter().flatten().collect();

    let mut raster = Raster {
        bbox,
        resolution,
        inside,
        boundary: Vec::new(),
        segments: Vec::new(),
    };
    for j in 0..n - 1 {
        for i in 0..n - 1 {
            let c = [
                raster.sample(i, j),
                raster.sample(i + 1, j),
                raster.sample(i + 1, j + 1),
                raster.sample(i, j + 1),
            ];
            if c.iter().all(|&b| b == c[0]) {
                continue;
            }
            let (x0, y0) = raster.coord(i, j);
            let (x1, y1) = raster.coord(i + 1, j + 1);
            let (xm, ym) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
            raster.boundary.push((xm, ym));
            let mids = [(xm, y0), (x1, ym), (xm, y1), (x0, ym)];
            let crossing: Vec<(f64, f64)> = (0..4)
                .filter(|&e| c[e] != c[(e + 1) % 4])
                .map(|e| mids[e])
                .collect();
            for pair in crossing.chunks(2) {
                if let [a, b] = pair {
                    raster.segments.push((*a, *b));
                }
            }
        }
    }
    Ok(raster)
}

/// Boundary curves of several rasters over a common box, one color each.
pub fn overlay_svg(layers: &[(&Raster, &str)], size: u32) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (raster, color) in layers {
        let b = raster.bbox;
        let sx = size as f64 / (b.x.1 - b.x.0);
        let sy = size as f64 / (b.y.1 - b.y.0);
        let map = |(x, y): (f64, f64)| ((x - b.x.0) * sx, size as f64 - (y - b.y.0) * sy);
        let mut d = String::new();
        for &(p, q) in &raster.segments {
            let (px, py) = map(p);
            let (qx, qy) = map(q);
            let _ = write!(d, "M{px:.2} {py:.2}L{qx:.2} {qy:.2}");
        }
        let _ = writeln!(
            svg,
            r#"<path d="{d}" stroke="{color}" stroke-width="1.5" fill="none"/>"#
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::semialg::semialg_description;

    #[test]
    fn empty_system_all_outside() {
        let sys = semialg_description(&parse("2*z1*z2", 2).unwrap(), 1, None).unwrap();
        let r = rasterize(&sys, RasterBox::square(0.1, 3.0), 32).unwrap();
        assert!(r.inside.iter().all(|&b| !b));
        assert!(r.boundary.is_empty());
    }

    #[test]
    fn linear_boundary_is_circle_at_level_one() {
        // level-one region for z1 + z2 + 1 near the origin: (s+1)^2 >= 2 with s = x1^2 + x2^2
        let sys = semialg_description(&parse("z1 + z2 + 1", 2).unwrap(), 1, None).unwrap();
        let r = rasterize(&sys, RasterBox::square(0.05, 1.0), 200).unwrap();
        let (dx, dy) = r.cell_size();
        let radius = (2f64.sqrt() - 1.0).sqrt();
        let near_origin: Vec<_> = r
            .boundary
            .iter()
            .filter(|(x, y)| x.hypot(*y) < 0.8)
            .collect();
        assert!(!near_origin.is_empty());
        for (x, y) in near_origin {
            assert!((x.hypot(*y) - radius).abs() <= dx.hypot(dy));
        }
    }

    #[test]
    fn ppm_header_and_size() {
        let sys = semialg_description(&parse("z1 + z2 + 1", 2).unwrap(), 1, None).unwrap();
        let r = rasterize(&sys, RasterBox::square(0.1, 2.0), 16).unwrap();
        let ppm = r.to_ppm();
        assert!(ppm.starts_with(b"P6\n16 16\n255\n"));
        assert_eq!(ppm.len(), b"P6\n16 16\n255\n".len() + 16 * 16 * 3);
        let svg = overlay_svg(&[(&r, "blue")], 300);
        assert!(svg.contains("stroke=\"blue\""));
    }

    #[test]
    fn rejects_bad_input() {
        let sys = semialg_description(&parse("z1 + z2 + 1", 2).unwrap(), 1, None).unwrap();
        assert!(matches!(
            rasterize(&sys, RasterBox::square(0.0, 1.0), 8),
            Err(SemialgError::InvalidBox)
        ));
        assert!(matches!(
            rasterize(&sys, RasterBox::square(0.1, 1.0), 1),
            Err(SemialgError::InvalidResolution { .. })
        ));
        let uni = semialg_description(&parse("z1 + 1", 1).unwrap(), 1, None).unwrap();
        assert!(matches!(
            rasterize(&uni, RasterBox::square(0.1, 1.0), 8),
            Err(SemialgError::NotPlanar(1))
        ));
    }
}
