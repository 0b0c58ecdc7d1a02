use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::cycres::quick_cyclic_resultant;
use crate::lopsided::{dominance_margin, LogPoint, PreparedPoly, TAU};
use crate::poly::{fmt_rational, log_sqrt, newton, Exponent, LaurentPoly};

use super::SemialgError;

/// `Σ |b_β| x^β`, stored through the exact squares `|b_β|²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsolutePoly {
    pub nvars: usize,
    pub terms: BTreeMap<Exponent, BigRational>,
}

impl AbsolutePoly {
    pub fn of(p: &LaurentPoly) -> Self {
        Self {
            nvars: p.nvars(),
            terms: p.terms().map(|(e, c)| (e.clone(), c.norm_sqr())).collect(),
        }
    }

    pub fn sq_magnitude(&self, e: &Exponent) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub order: Exponent,
    /// `2^{kn} · order`.
    pub scaled: Exponent,
    /// `|b_scaled|²`, zero when the resultant has no such term.
    pub sq_magnitude: BigRational,
}

impl Candidate {
    /// A candidate without a matching term gives `g ≥ 0`, true on the orthant.
    pub fn is_vacuous(&self) -> bool {
        self.sq_magnitude.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct SemiAlgSystem {
    pub level: u32,
    pub base: AbsolutePoly,
    pub candidates: Vec<Candidate>,
    prepared: PreparedPoly,
}

/// Builds the level-`k` system, computing `cres(f; 2^k)` along the way.
/// Candidates default to the lattice points of `New(f)`.
pub fn semialg_description(
    f: &LaurentPoly,
    k: u32,
    candidates: Option<&[Exponent]>,
) -> Result<SemiAlgSystem, SemialgError> {
    if k == 0 {
        return Err(SemialgError::InvalidLevel);
    }
    let cres = quick_cyclic_resultant(f, k)?;
    let orders: Vec<Exponent> = match candidates {
        Some(m) => m.to_vec(),
        None => newton(f)?.lattice_points,
    };
    semialg_from_resultant(&cres, k, &orders)
}

/// Builds the system from an already computed `cres(f; 2^k)`.
pub fn semialg_from_resultant(
    cres: &LaurentPoly,
    k: u32,
    orders: &[Exponent],
) -> Result<SemiAlgSystem, SemialgError> {
    if orders.is_empty() {
        return Err(SemialgError::EmptyCandidates);
    }
    let n = cres.nvars();
    let base = AbsolutePoly::of(cres);
    let factor = 1i64 << (k as u64 * n as u64);
    let candidates = orders
        .iter()
        .map(|alpha| {
            if alpha.len() != n {
                return Err(SemialgError::DimensionMismatch {
                    got: alpha.len(),
                    expected: n,
                });
            }
            let scaled = alpha.scale(factor);
            let sq_magnitude = base.sq_magnitude(&scaled);
            Ok(Candidate {
                order: alpha.clone(),
                scaled,
                sq_magnitude,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let logs = base
        .terms
        .iter()
        .map(|(e, sq)| Ok((e.clone(), log_sqrt(sq)?.ln())))
        .collect::<Result<Vec<_>, SemialgError>>()?;
    let prepared = PreparedPoly::from_logs(n, k, TAU, logs);
    Ok(SemiAlgSystem {
        level: k,
        base,
        candidates,
        prepared,
    })
}

impl SemiAlgSystem {
    pub fn nvars(&self) -> usize {
        self.base.nvars
    }

    /// The `n` orthant constraints `x_i ≥ 0`, as variable indices.
    pub fn orthant(&self) -> Vec<usize> {
        (0..self.nvars()).collect()
    }

    /// Whether each candidate inequality holds given the term logs
    /// `L_β = ln|b_β| + β·ln x`. An inequality fails only when its own term
    /// beats the log-sum-exp of all others by more than the margin.
    fn holds_on_logs(&self, logs: &[f64]) -> bool {
        if logs.is_empty() {
            return true;
        }
        let (top, margin) = dominance_margin(logs);
        if margin <= TAU {
            return true;
        }
        let top_exp = &self.prepared.exponents()[top];
        !self
            .candidates
            .iter()
            .any(|c| !c.is_vacuous() && &c.scaled == top_exp)
    }

    /// Per-candidate evaluation at `Log x = w`: `true` means the inequality holds.
    pub fn inequalities_at(&self, w: &LogPoint) -> Result<Vec<bool>, SemialgError> {
        let logs = self.prepared.term_logs(w)?;
        let (top, margin) = dominance_margin(&logs);
        let top_exp = &self.prepared.exponents()[top];
        Ok(self
            .candidates
            .iter()
            .map(|c| c.is_vacuous() || margin <= TAU || &c.scaled != top_exp)
            .collect())
    }

    /// Membership of the positive point `exp(w)`.
    pub fn contains_log(&self, w: &LogPoint) -> Result<bool, SemialgError> {
        Ok(self.holds_on_logs(&self.prepared.term_logs(w)?))
    }

    /// Membership of a point given by floating-point logarithms.
    pub fn contains_log_f64(&self, w: &[f64]) -> bool {
        self.holds_on_logs(&self.prepared.term_logs_f64(w))
    }

    /// Membership of `x` in the closed orthant. On a coordinate hyperplane
    /// the terms that vanish there get `L = -∞`.
    pub fn contains(&self, x: &[f64]) -> bool {
        assert_eq!(x.len(), self.nvars());
        if x.iter().any(|&v| v < 0.0) {
            return false;
        }
        let w: Vec<f64> = x.iter().map(|&v| v.ln()).collect();
        self.contains_log_f64(&w)
    }

    /// `{level, candidates:[{order, scaledExponent, sqMagnitude}], baseTerms:[{exponent, sqMagnitude}]}`.
    pub fn to_json(&self) -> Value {
        let rat = |q: &BigRational| rational_string(q);
        json!({
            "level": self.level,
            "candidates": self.candidates.iter().map(|c| json!({
                "order": c.order.0,
                "scaledExponent": c.scaled.0,
                "sqMagnitude": rat(&c.sq_magnitude),
            })).collect::<Vec<_>>(),
            "baseTerms": self.base.terms.iter().rev().map(|(e, sq)| json!({
                "exponent": e.0,
                "sqMagnitude": rat(sq),
            })).collect::<Vec<_>>(),
        })
    }

    /// Human-readable inequalities, one per line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for c in &self.candidates {
            let lhs: Vec<String> = self
                .base
                .terms
                .iter()
                .rev()
                .filter(|(e, _)| **e != c.scaled)
                .map(|(e, sq)| term_string(sq, e))
                .collect();
            let lhs = if lhs.is_empty() {
                "0".to_string()
            } else {
                lhs.join(" + ")
            };
            let rhs = if c.is_vacuous() {
                "0".to_string()
            } else {
                term_string(&c.sq_magnitude, &c.scaled)
            };
            let _ = writeln!(out, "{lhs} >= {rhs}    [order {}]", c.order);
        }
        let vars: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        let _ = writeln!(out, "{} >= 0", vars.join(", "));
        out
    }
}

fn rational_string(q: &BigRational) -> String {
    struct R<'a>(&'a BigRational);
    impl std::fmt::Display for R<'_> {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            fmt_rational(self.0, f)
        }
    }
    R(q).to_string()
}

/// `|b|` shown exactly when `|b|²` is a rational square, else as `sqrt(...)`.
fn magnitude_string(sq: &BigRational) -> String {
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    match (root(sq.numer()), root(sq.denom())) {
        (Some(a), Some(b)) => rational_string(&BigRational::new(a, b)),
        _ => format!("sqrt({})", rational_string(sq)),
    }
}

fn term_string(sq: &BigRational, e: &Exponent) -> String {
    let mag = magnitude_string(sq);
    let mono: Vec<String> =
        e.0.iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| {
                if k == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{k}", i + 1)
                }
            })
            .collect();
    match (mag.as_str(), mono.is_empty()) {
        (_, true) => mag,
        ("1", false) => mono.join("*"),
        _ => format!("{mag}*{}", mono.join("*")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn linear_level_one() {
        let f = parse("z1 + z2 + 1", 2).unwrap();
        let sys = semialg_description(&f, 1, None).unwrap();
        assert_eq!(sys.base.terms.len(), 6);
        let scaled: Vec<Vec<i64>> = sys.candidates.iter().map(|c| c.scaled.0.clone()).collect();
        assert_eq!(scaled, vec![vec![0, 0], vec![0, 4], vec![4, 0]]);
        assert!(sys
            .candidates
            .iter()
            .all(|c| c.sq_magnitude == BigRational::from_integer(1.into())));
        let four = BigRational::from_integer(4.into());
        assert_eq!(sys.base.sq_magnitude(&Exponent(vec![2, 2])), four);
        assert!(sys
            .pretty()
            .starts_with("x1^4 + 2*x1^2*x2^2 + x2^4 + 2*x1^2 + 2*x2^2 >= 1"));
        assert!(!sys.contains(&[0.1, 0.1]));
        assert!(sys.contains(&[1.0, 1.0]));
        assert!(!sys.contains(&[3.0, 0.1]));
    }

    #[test]
    fn single_monomial_is_empty_off_axes() {
        let f = parse("3*z1^2*z2", 2).unwrap();
        let sys = semialg_description(&f, 2, None).unwrap();
        assert_eq!(sys.candidates.len(), 1);
        for x in [[0.5, 0.5], [2.0, 0.1], [10.0, 3.0]] {
            assert!(!sys.contains(&x));
        }
    }

    #[test]
    fn vacuous_candidates() {
        let f = parse("z1 + z2 + 1", 2).unwrap();
        let extra = [Exponent(vec![0, 0]), Exponent(vec![5, 5])];
        let sys = semialg_description(&f, 1, Some(&extra)).unwrap();
        assert!(sys.candidates[1].is_vacuous());
        assert!(sys.pretty().contains(">= 0    [order (5,5)]"));
    }

    #[test]
    fn errors() {
        let f = parse("z1 + 1", 1).unwrap();
        assert!(matches!(
            semialg_description(&f, 0, None),
            Err(SemialgError::InvalidLevel)
        ));
        assert!(matches!(
            semialg_description(&f, 1, Some(&[])),
            Err(SemialgError::EmptyCandidates)
        ));
    }

    #[test]
    fn json_schema() {
        let f = parse("(1+1i)*z1 + 1", 1).unwrap();
        let sys = semialg_description(&f, 1, None).unwrap();
        let v = sys.to_json();
        assert_eq!(v["level"], 1);
        assert_eq!(v["candidates"][0]["order"], json!([0]));
        assert_eq!(v["candidates"][1]["scaledExponent"], json!([2]));
        // cres = 1 - (1+i)^2 z^2 = 1 - 2i z^2
        assert_eq!(v["candidates"][1]["sqMagnitude"], "4");
        assert_eq!(v["baseTerms"].as_array().unwrap().len(), 2);
        assert!(sys.pretty().contains("2*x1^2"));
    }

    #[test]
    fn irrational_magnitudes_print_as_roots() {
        assert_eq!(
            magnitude_string(&BigRational::from_integer(2.into())),
            "sqrt(2)"
        );
        assert_eq!(
            magnitude_string(&BigRational::new(9.into(), 4.into())),
            "3/2"
        );
    }
}
