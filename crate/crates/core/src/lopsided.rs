//! Lopsidedness certificates, order recovery and level selection.
//!
//! A Laurent polynomial `g = Σ b_j z^{α(j)}` is lopsided at `w ∈ R^n` when one
//! term `|b_k e^{α(k)·w}|` exceeds the sum of all the others. Every test here
//! works with `L_j = ln|b_j| + α(j)·w` and compares `L_k` against the
//! log-sum-exp of the rest, with a safety margin [`TAU`]: gaps at or below
//! `TAU` never count as certificates.

use std::f64::consts::LN_2;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::poly::{log_abs, Exponent, LaurentPoly, NewtonData, PolyError};

/// Certificate soundness margin in natural-log units.
pub const TAU: f64 = 1.0 / (1u64 << 20) as f64;

/// Refuse to pick a level above this.
pub const MAX_LEVEL: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LopsidedError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("certificate is not lopsided")]
    NotLopsided,
    #[error("dominating exponent {dominating} is not divisible by {divisor}")]
    NonIntegralOrder { dominating: Exponent, divisor: i64 },
    #[error("required level exceeds the cap of {cap}")]
    LevelCapExceeded { cap: u32 },
    #[error("n, d and eps must be positive")]
    InvalidLevelInput,
}

/// A point `w = Log|v|` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogPoint {
    pub coords: Vec<BigRational>,
}

impl LogPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Exact rational image of finite floats.
    pub fn from_f64(coords: &[f64]) -> Option<Self> {
        coords
            .iter()
            .map(|&c| BigRational::from_float(c))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    fn scaled(&self) -> ScaledPoint {
        let den = self
            .coords
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let small = nums
            .iter()
            .map(|x| x.to_i64())
            .collect::<Option<Vec<i64>>>();
        ScaledPoint {
            den_f64: den.to_f64().unwrap_or(f64::INFINITY),
            den,
            nums,
            small,
        }
    }
}

/// `w = nums / den` with a fast path when every numerator fits in `i64`.
struct ScaledPoint {
    den: BigInt,
    den_f64: f64,
    nums: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl ScaledPoint {
    fn dot(&self, alpha: &[i64]) -> f64 {
        if let Some(small) = &self.small {
            let mut acc: i128 = 0;
            let mut ok = true;
            for (&a, &w) in alpha.iter().zip(small) {
                match (a as i128)
                    .checked_mul(w as i128)
                    .and_then(|t| acc.checked_add(t))
                {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.den_f64.is_finite() {
                return acc as f64 / self.den_f64;
            }
        }
        let num: BigInt = alpha
            .iter()
            .zip(&self.nums)
            .map(|(&a, w)| BigInt::from(a) * w)
            .sum();
        BigRational::new(num, self.den.clone())
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub lopsided: bool,
    /// Exponent of the dominating term; present iff `lopsided`.
    pub dominating: Option<Exponent>,
    /// `L_max - logsumexp(others)`; `+∞` for a single term.
    pub margin: f64,
    /// Level of the cyclic resultant that was tested.
    pub level: u32,
}

/// Integral order of the complement component, `dominating / 2^{kn}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderVector(pub Vec<i64>);

impl OrderVector {
    pub fn as_exponent(&self) -> Exponent {
        Exponent(self.0.clone())
    }
}

/// A polynomial with its term log-magnitudes precomputed, ready to be tested
/// at many points.
#[derive(Clone, Debug)]
pub struct PreparedPoly {
    nvars: usize,
    level: u32,
    tau: f64,
    exponents: Vec<Exponent>,
    log_coeffs: Vec<f64>,
}

impl PreparedPoly {
    pub fn new(g: &LaurentPoly, level: u32) -> Result<Self, LopsidedError> {
        Self::with_tau(g, level, TAU)
    }

    pub fn with_tau(g: &LaurentPoly, level: u32, tau: f64) -> Result<Self, LopsidedError> {
        if g.is_zero() {
            return Err(PolyError::ZeroPolynomial.into());
        }
        let mut exponents = Vec::with_capacity(g.num_terms());
        let mut log_coeffs = Vec::with_capacity(g.num_terms());
        for (e, c) in g.terms() {
            exponents.push(e.clone());
            log_coeffs.push(log_abs(c)?.ln());
        }
        Ok(Self {
            nvars: g.nvars(),
            level,
            tau,
            exponents,
            log_coeffs,
        })
    }

    /// From precomputed `(exponent, ln|b|)` pairs.
    pub(crate) fn from_logs(
        nvars: usize,
        level: u32,
        tau: f64,
        terms: Vec<(Exponent, f64)>,
    ) -> Self {
        let (exponents, log_coeffs) = terms.into_iter().unzip();
        Self {
            nvars,
            level,
            tau,
            exponents,
            log_coeffs,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn num_terms(&self) -> usize {
        self.exponents.len()
    }

    /// `L_j` for every term.
    pub fn term_logs(&self, w: &LogPoint) -> Result<Vec<f64>, LopsidedError> {
        if w.dim() != self.nvars {
            return Err(LopsidedError::DimensionMismatch {
                got: w.dim(),
                expected: self.nvars,
            });
        }
        let sp = w.scaled();
        Ok(self
            .exponents
            .iter()
            .zip(&self.log_coeffs)
            .map(|(e, &lc)| lc + sp.dot(&e.0))
            .collect())
    }

    /// `L_j` at a floating-point log point, for dense raster sweeps.
    pub fn term_logs_f64(&self, w: &[f64]) -> Vec<f64> {
        assert_eq!(w.len(), self.nvars);
        self.exponents
            .iter()
            .zip(&self.log_coeffs)
            .map(|(e, &lc)| {
                lc + e
                    .0
                    .iter()
                    .zip(w)
                    .filter(|(&a, _)| a != 0)
                    .map(|(&a, &x)| a as f64 * x)
                    .sum::<f64>()
            })
            .collect()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn test(&self, w: &LogPoint) -> Result<Certificate, LopsidedError> {
        let logs = self.term_logs(w)?;
        Ok(self.certify(&logs))
    }

    fn certify(&self, logs: &[f64]) -> Certificate {
        let (k, margin) = dominance_margin(logs);
        let lopsided = margin > self.tau;
        Certificate {
            lopsided,
            dominating: lopsided.then(|| self.exponents[k].clone()),
            margin,
            level: self.level,
        }
    }
}

/// Index of the largest entry and its gap over the log-sum-exp of the others.
pub fn dominance_margin(logs: &[f64]) -> (usize, f64) {
    let k = logs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("at least one term");
    if logs.len() == 1 {
        return (k, f64::INFINITY);
    }
    let mut rest: Vec<f64> = logs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &l)| l)
        .collect();
    rest.sort_unstable_by(|a, b| b.total_cmp(a));
    (k, logs[k] - logsumexp_sorted(&rest))
}

/// `ln Σ e^{x_i}` for values sorted in descending order.
fn logsumexp_sorted(desc: &[f64]) -> f64 {
    let top = desc[0];
    if top == f64::NEG_INFINITY {
        return top;
    }
    let sum: f64 = desc.iter().map(|&x| (x - top).exp()).sum();
    top + sum.ln()
}

/// Lopsidedness certificate of `g` at `w`.
pub fn is_lopsided(g: &LaurentPoly, w: &LogPoint) -> Result<Certificate, LopsidedError> {
    PreparedPoly::new(g, 0)?.test(w)
}

pub fn is_lopsided_with_tau(
    g: &LaurentPoly,
    w: &LogPoint,
    tau: f64,
) -> Result<Certificate, LopsidedError> {
    PreparedPoly::with_tau(g, 0, tau)?.test(w)
}

/// Order of the complement component certified by `cert` at level `k` in
/// `n` variables: the dominating exponent divided by `2^{kn}`.
pub fn order_from_certificate(
    cert: &Certificate,
    n: usize,
    k: u32,
) -> Result<OrderVector, LopsidedError> {
    let dominating = cert
        .dominating
        .as_ref()
        .filter(|_| cert.lopsided)
        .ok_or(LopsidedError::NotLopsided)?;
    let shift = k as u64 * n as u64;
    let divisor = 1i64
        .checked_shl(shift as u32)
        .filter(|_| shift < 63)
        .unwrap_or(i64::MAX);
    let entries = dominating
        .0
        .iter()
        .map(|&x| {
            if x % divisor == 0 {
                Some(x / divisor)
            } else {
                None
            }
        })
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| LopsidedError::NonIntegralOrder {
            dominating: dominating.clone(),
            divisor,
        })?;
    Ok(OrderVector(entries))
}

/// `C(n, d) = (n-1) ln 2 + ln((n+3) 2^{n+1} d)`.
pub fn level_constant(n: u32, d: u64) -> f64 {
    (n as f64 - 1.0) * LN_2 + ((n as f64 + 3.0) * 2f64.powi(n as i32 + 1) * d as f64).ln()
}

/// Smallest `k ≥ 1` with `2^k / k ≥ C(n, d) / eps`.
pub fn choose_level(n: u32, d: u64, eps: &BigRational) -> Result<u32, LopsidedError> {
    if n == 0 || d == 0 || !eps.is_positive() {
        return Err(LopsidedError::InvalidLevelInput);
    }
    let threshold = level_constant(n, d) / eps.to_f64().unwrap_or(f64::MIN_POSITIVE);
    (1..=MAX_LEVEL)
        .find(|&k| 2f64.powi(k as i32) / k as f64 >= threshold)
        .ok_or(LopsidedError::LevelCapExceeded { cap: MAX_LEVEL })
}

/// Degree used by [`choose_level`] for a Laurent polynomial: the largest total
/// degree once every exponent has been shifted to be nonnegative.
pub fn effective_degree(f: &LaurentPoly) -> u64 {
    let n = f.nvars();
    let lows: Vec<i64> = (0..n)
        .map(|v| f.degree_range(v).map(|r| r.0).unwrap_or(0))
        .collect();
    f.exponents()
        .map(|e| e.0.iter().zip(&lows).map(|(x, lo)| x - lo).sum::<i64>())
        .max()
        .unwrap_or(0)
        .max(1) as u64
}

/// True when `order` is one of the Newton polytope's lattice points.
pub fn order_in_polytope(order: &OrderVector, nd: &NewtonData) -> bool {
    nd.contains(&order.0)
}
