use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Exponent, GaussianRational, PolyError};

/// Sparse Laurent polynomial in `nvars` variables over `Q(i)`.
///
/// Terms live in a map keyed by exponent vector; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::monomial(nvars, Exponent::zero(nvars), c)
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: GaussianRational) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must match nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    /// The variable `z_{var+1}` (0-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, Exponent::unit(nvars, var), GaussianRational::one())
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, GaussianRational)>,
    {
        let mut map: BTreeMap<Exponent, GaussianRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must match nvars");
            *map.entry(e).or_default() += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coeff(&self, exp: &Exponent) -> Option<&GaussianRational> {
        self.terms.get(exp)
    }

    pub fn coeff_of(&self, exp: &[i64]) -> GaussianRational {
        self.terms
            .get(&Exponent::from(exp))
            .cloned()
            .unwrap_or_default()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Exponent, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Maximum total degree over the support; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Exponent::total_degree).max()
    }

    /// `(min, max)` exponent of one variable over the support.
    pub fn degree_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.0[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x >= 0))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    fn check_nvars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_default();
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, b)| (e.clone(), b * c)).collect(),
        }
    }

    /// Multiplies by the monomial `z^exp`.
    pub fn shift(&self, exp: &Exponent) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(exp), c.clone()))
                .collect(),
        }
    }

    /// Exact product.
    ///
    /// Coefficients are cleared to Gaussian integers before the convolution so
    /// the inner loop never normalizes a rational; the common denominator is
    /// divided out once per output term.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (lhs, den_l) = self.integer_terms();
        let (rhs, den_r) = other.integer_terms();
        let real = self.is_real() && other.is_real();

        let mut acc: HashMap<Exponent, (BigInt, BigInt)> =
            HashMap::with_capacity(lhs.len().saturating_mul(rhs.len()).min(1 << 20));
        for (ea, ra, ia) in &lhs {
            for (eb, rb, ib) in &rhs {
                let slot = acc
                    .entry(ea.add(eb))
                    .or_insert_with(|| (BigInt::zero(), BigInt::zero()));
                if real {
                    slot.0 += ra * rb;
                } else {
                    slot.0 += ra * rb;
                    slot.0 -= ia * ib;
                    slot.1 += ra * ib;
                    slot.1 += ia * rb;
                }
            }
        }

        let den = den_l * den_r;
        let terms = acc
            .into_iter()
            .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
            .map(|(e, (re, im))| {
                let c = if den.is_one() {
                    GaussianRational::new(
                        BigRational::from_integer(re),
                        BigRational::from_integer(im),
                    )
                } else {
                    GaussianRational::new(
                        BigRational::new(re, den.clone()),
                        BigRational::new(im, den.clone()),
                    )
                };
                (e, c)
            })
            .collect();
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Terms scaled to Gaussian integers together with the common denominator.
    fn integer_terms(&self) -> (Vec<(Exponent, BigInt, BigInt)>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (re, im) = c.scaled_numerators(&den);
                (e.clone(), re, im)
            })
            .collect();
        (terms, den)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Negates every term whose exponent in `var` (0-based) is not divisible
    /// by `2^level`.
    pub fn flip_signs(&self, var: usize, level: u32) -> Result<Self, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        if level == 0 {
            return Err(PolyError::InvalidLevel);
        }
        let modulus = 1i64
            .checked_shl(level)
            .filter(|m| *m > 0)
            .unwrap_or(i64::MAX);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                if e.0[var].rem_euclid(modulus) != 0 {
                    (e.clone(), -c)
                } else {
                    (e.clone(), c.clone())
                }
            })
            .collect();
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitutes `z_var -> scale * z_var`.
    pub fn scale_var(&self, var: usize, scale: &GaussianRational) -> Self {
        let mut cache: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        let inv = scale.inv();
        let terms = self.terms.iter().map(|(e, c)| {
            let p = e.0[var];
            let factor = cache
                .entry(p)
                .or_insert_with(|| {
                    let base = if p >= 0 {
                        scale.clone()
                    } else {
                        inv.clone().expect("scale must be nonzero")
                    };
                    let mut acc = GaussianRational::one();
                    for _ in 0..p.unsigned_abs() {
                        acc = &acc * &base;
                    }
                    acc
                })
                .clone();
            (e.clone(), c * &factor)
        });
        Self::from_terms(self.nvars, terms.collect::<Vec<_>>())
    }

    /// Groups terms by their exponent in `var`. Each group keeps the full
    /// monomial, including the `z_var` power.
    pub fn split_by_var(&self, var: usize) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.0[var])
                .or_insert_with(|| LaurentPoly::zero(self.nvars))
                .terms
                .insert(e.clone(), c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, failing if the division leaves a
    /// remainder. Both operands must be genuine polynomials.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_nvars(divisor)?;
        let (lead_e, lead_c) = divisor.leading().ok_or(PolyError::ZeroPolynomial)?;
        if divisor.num_terms() == 1 {
            let inv = lead_c.inv().expect("nonzero leading coefficient");
            let terms = self
                .terms
                .iter()
                .map(|(e, c)| {
                    let q = e.sub(lead_e);
                    (q, c * &inv)
                })
                .collect();
            return Ok(Self {
                nvars: self.nvars,
                terms,
            });
        }
        let lead_inv = lead_c.inv().expect("nonzero leading coefficient");
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((re, rc)) = rem.last_key_value().map(|(e, c)| (e.clone(), c.clone())) {
            if !re.dominates(lead_e) {
                return Err(PolyError::InexactDivision);
            }
            let qe = re.sub(lead_e);
            let qc = &rc * &lead_inv;
            for (de, dc) in &divisor.terms {
                let key = de.add(&qe);
                let delta = dc * &qc;
                let slot = rem.entry(key.clone()).or_default();
                *slot = &*slot - &delta;
                if slot.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qe, qc);
        }
        Ok(Self {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Numeric evaluation in double precision.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let coef = Complex64::new(
                    c.re.to_f64().unwrap_or(f64::NAN),
                    c.im.to_f64().unwrap_or(f64::NAN),
                );
                e.0.iter()
                    .zip(point)
                    .fold(coef, |acc, (&k, z)| acc * z.powi(k as i32))
            })
            .sum()
    }

    /// Largest `|re|` or `|im|` numerator over all coefficients.
    pub fn max_abs_numerator(&self) -> BigInt {
        self.terms
            .values()
            .flat_map(|c| [c.re.numer().abs(), c.im.numer().abs()])
            .max()
            .unwrap_or_default()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("nvars mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("nvars mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("nvars mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn fmt_monomial(e: &Exponent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "z{}", i + 1)?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Canonical text form: terms in descending graded-lex order, no spaces.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative_real = c.is_real() && c.re.is_negative();
            let constant = e.is_zero();
            if negative_real {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let shown = if negative_real { -c } else { c.clone() };
            if constant {
                write!(f, "{shown}")?;
            } else {
                if !shown.is_one() {
                    write!(f, "{shown}*")?;
                }
                fmt_monomial(e, f)?;
            }
        }
        Ok(())
    }
}
