use std::f64::consts::LN_2;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{GaussianRational, PolyError};

/// Natural logarithm of a magnitude, split as `ln_mantissa + binary_exponent·ln 2`.
///
/// The split keeps huge exact integers (coefficients with thousands of bits)
/// out of fixed-width floats: only their top 64 bits are ever converted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogMagnitude {
    pub ln_mantissa: f64,
    pub binary_exponent: i64,
}

impl LogMagnitude {
    pub const ZERO: LogMagnitude = LogMagnitude {
        ln_mantissa: 0.0,
        binary_exponent: 0,
    };

    pub fn ln(&self) -> f64 {
        self.ln_mantissa + self.binary_exponent as f64 * LN_2
    }

    /// `ln n` for a positive big integer.
    pub fn of_positive(n: &BigInt) -> Result<Self, PolyError> {
        if n.sign() != Sign::Plus {
            return Err(PolyError::LogOfZero);
        }
        let bits = n.bits();
        let shift = bits.saturating_sub(64);
        let top = (n >> shift).to_u64().expect("at most 64 bits remain");
        Ok(LogMagnitude {
            ln_mantissa: (top as f64).ln(),
            binary_exponent: shift as i64,
        })
    }

    pub fn half(self) -> Self {
        let odd = self.binary_exponent.rem_euclid(2);
        LogMagnitude {
            ln_mantissa: (self.ln_mantissa + odd as f64 * LN_2) / 2.0,
            binary_exponent: (self.binary_exponent - odd) / 2,
        }
    }
}

impl std::ops::Add for LogMagnitude {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        LogMagnitude {
            ln_mantissa: self.ln_mantissa + other.ln_mantissa,
            binary_exponent: self.binary_exponent + other.binary_exponent,
        }
    }
}

impl std::ops::Sub for LogMagnitude {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        LogMagnitude {
            ln_mantissa: self.ln_mantissa - other.ln_mantissa,
            binary_exponent: self.binary_exponent - other.binary_exponent,
        }
    }
}

/// `ln |c| = ½ ln(re² + im²)`, computed from the exact squared modulus.
pub fn log_abs(c: &GaussianRational) -> Result<LogMagnitude, PolyError> {
    if c.is_zero() {
        return Err(PolyError::LogOfZero);
    }
    log_sqrt(&c.norm_sqr())
}

/// `½ ln q` for a positive rational `q`, typically a squared magnitude.
pub fn log_sqrt(q: &BigRational) -> Result<LogMagnitude, PolyError> {
    Ok(log_ratio(q.numer(), q.denom())?.half())
}

/// `ln r` for a positive exact rational given as numerator and denominator.
pub fn log_ratio(num: &BigInt, den: &BigInt) -> Result<LogMagnitude, PolyError> {
    if num.is_zero() {
        return Err(PolyError::LogOfZero);
    }
    Ok(LogMagnitude::of_positive(num)? - LogMagnitude::of_positive(den)?)
}
