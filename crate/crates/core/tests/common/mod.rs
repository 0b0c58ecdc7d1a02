//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use amoeba::poly::{Exponent, GaussianRational, LaurentPoly};
use num_complex::Complex64;
use proptest::prelude::*;

/// Parses the compact `x48+28*x40y4-...` listing style (variables `x`, `y`, `z`).
pub fn parse_compact(listing: &str, nvars: usize) -> LaurentPoly {
    let text: String = listing.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff: i64 = if i > start {
            text[start..i].parse().unwrap()
        } else {
            1
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut exp = vec![0i64; nvars];
        while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            let var = (bytes[i] - b'x') as usize;
            i += 1;
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            exp[var] += if i > s {
                text[s..i].parse::<i64>().unwrap()
            } else {
                1
            };
        }
        coeff *= sign;
        terms.push((Exponent(exp), GaussianRational::from_integer(coeff)));
    }
    LaurentPoly::from_terms(nvars, terms)
}

/// All roots of a monic-normalizable complex polynomial, coefficients ascending.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|j| seed.powu(j as u32)).collect();
    for _ in 0..500 {
        let prev = roots.clone();
        for j in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for (m, r) in roots.iter().enumerate() {
                if m != j {
                    denom *= roots[j] - r;
                }
            }
            let step = eval(roots[j]) / denom;
            roots[j] -= step;
        }
        let moved = roots
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if moved < 1e-15 {
            break;
        }
    }
    roots
}

/// Product of `f` over all tuples of `r`-th roots of unity applied to `z`.
pub fn roots_of_unity_product(f: &LaurentPoly, r: u32, z: &[Complex64]) -> Complex64 {
    let n = z.len();
    let total = (r as usize).pow(n as u32);
    let mut prod = Complex64::new(1.0, 0.0);
    for idx in 0..total {
        let mut t = idx;
        let point: Vec<Complex64> = z
            .iter()
            .map(|zi| {
                let j = t % r as usize;
                t /= r as usize;
                zi * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / r as f64)
            })
            .collect();
        prod *= f.eval_complex(&point);
    }
    prod
}

/// Membership in the amoeba of `1 + z1 + z2`: the moduli `1, e^w1, e^w2`
/// satisfy the triangle inequality.
pub fn in_line_amoeba(w: [f64; 2]) -> bool {
    let m = [1.0, w[0].exp(), w[1].exp()];
    let sum: f64 = m.iter().sum();
    m.iter().all(|&x| x <= sum - x)
}

/// Euclidean distance from `w` to the boundary of the amoeba of `1 + z1 + z2`,
/// by dense sampling of its three boundary curves.
pub fn line_amoeba_boundary_distance(w: [f64; 2]) -> f64 {
    let soft = |s: f64| if s > 30.0 { s } else { s.exp().ln_1p() };
    let mut best = f64::INFINITY;
    let steps = 60_000;
    for i in 0..=steps {
        let s = -30.0 + 60.0 * i as f64 / steps as f64;
        let curves = [[-soft(-s), -soft(s)], [soft(s), s], [s, soft(s)]];
        for c in curves {
            best = best.min((c[0] - w[0]).hypot(c[1] - w[1]));
        }
    }
    best
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64), ray: bool) -> f64 {
    let d = (b.0 - a.0, b.1 - a.1);
    let t = ((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / (d.0 * d.0 + d.1 * d.1);
    let t = if ray { t.max(0.0) } else { t.clamp(0.0, 1.0) };
    (p.0 - a.0 - t * d.0).hypot(p.1 - a.1 - t * d.1)
}

/// Distance from `x` to the boundary of the unlog amoeba of `1 + z1 + z2`:
/// the segment `x1 + x2 = 1` and the rays `x1 = x2 + 1`, `x2 = x1 + 1`.
pub fn unlog_line_boundary_distance(x: (f64, f64)) -> f64 {
    segment_distance(x, (1.0, 0.0), (0.0, 1.0), false)
        .min(segment_distance(x, (1.0, 0.0), (2.0, 1.0), true))
        .min(segment_distance(x, (0.0, 1.0), (1.0, 2.0), true))
}

/// Nonzero polynomials with at most `max_terms` terms and exponents in `lo..=hi`.
pub fn small_poly(
    nvars: usize,
    max_terms: usize,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = LaurentPoly> {
    let term = (
        proptest::collection::vec(lo..=hi, nvars),
        -4i64..=4,
        -3i64..=3,
    );
    proptest::collection::vec(term, 1..=max_terms)
        .prop_map(move |ts| {
            LaurentPoly::from_terms(
                nvars,
                ts.into_iter()
                    .map(|(e, re, im)| (Exponent(e), GaussianRational::from_ints(re, im))),
            )
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn any_small_poly(max_terms: usize, lo: i64, hi: i64) -> impl Strategy<Value = LaurentPoly> {
    (1usize..=2).prop_flat_map(move |n| small_poly(n, max_terms, lo, hi))
}
