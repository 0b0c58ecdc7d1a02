use std::f64::consts::PI;

use num_complex::Complex64;

use crate::poly::LaurentPoly;

use super::CycresError;

const MAX_FACTORS: u128 = 1 << 16;

/// A complex number held as `e^(ln_abs) · e^(i·arg)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    pub ln_abs: f64,
    pub arg: f64,
    /// Exactly zero (some factor vanished).
    pub zero: bool,
}

impl LogComplex {
    pub fn to_complex(self) -> Result<Complex64, CycresError> {
        if self.zero {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if self.ln_abs >= f64::MAX.ln() {
            return Err(CycresError::Overflow {
                ln_abs: self.ln_abs,
            });
        }
        Ok(Complex64::from_polar(self.ln_abs.exp(), self.arg))
    }
}

/// The defining product of `cres(f; r)` at `point`, accumulated in log-polar
/// form. Factors are combined in lexicographic order of root indices.
pub fn poisson_log_product(
    f: &LaurentPoly,
    r: u32,
    point: &[Complex64],
) -> Result<LogComplex, CycresError> {
    let n = f.nvars();
    if point.len() != n {
        return Err(CycresError::DimensionMismatch {
            got: point.len(),
            expected: n,
        });
    }
    if r == 0 {
        return Err(CycresError::InvalidOrder);
    }
    if point.iter().any(|z| z.norm() == 0.0) {
        return Err(CycresError::ZeroCoordinate);
    }
    let factors = (r as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if factors > MAX_FACTORS {
        return Err(CycresError::TooManyFactors {
            factors,
            limit: MAX_FACTORS,
        });
    }
    let roots: Vec<Complex64> = (0..r)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / r as f64))
        .collect();
    let mut idx = vec![0usize; n];
    let mut scaled = vec![Complex64::new(0.0, 0.0); n];
    let mut acc = LogComplex {
        ln_abs: 0.0,
        arg: 0.0,
        zero: false,
    };
    for _ in 0..factors {
        for v in 0..n {
            scaled[v] = roots[idx[v]] * point[v];
        }
        let value = f.eval_complex(&scaled);
        if value.norm() == 0.0 {
            acc.zero = true;
        } else {
            acc.ln_abs += value.norm().ln();
            acc.arg += value.arg();
        }
        for v in (0..n).rev() {
            idx[v] += 1;
            if idx[v] < r as usize {
                break;
            }
            idx[v] = 0;
        }
    }
    acc.arg = acc.arg.rem_euclid(2.0 * PI);
    Ok(acc)
}

pub fn poisson_numeric_oracle(
    f: &LaurentPoly,
    r: u32,
    point: &[Complex64],
) -> Result<Complex64, CycresError> {
    poisson_log_product(f, r, point)?.to_complex()
}
