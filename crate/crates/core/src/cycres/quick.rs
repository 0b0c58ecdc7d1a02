use crate::poly::{bounding_box_widths, LaurentPoly};

use super::CycresError;

pub const DEFAULT_MAX_TERMS: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct QuickOptions {
    /// Refuse requests whose estimated output term count exceeds this.
    pub max_terms: u128,
    /// Variable processing order (0-based); `None` means `0..n`.
    pub var_order: Option<Vec<usize>>,
}

impl Default for QuickOptions {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
            var_order: None,
        }
    }
}

/// Upper bound on the number of terms of `cres(f; 2^k)`.
///
/// Every exponent of the result is a multiple of `r = 2^k` and its Newton
/// polytope is `r^n·New(f)`, so the reduced exponents live in a box with
/// sides `r^(n-1)·width_i + 1`. Intermediate products are bounded by the same
/// box.
pub fn estimate_terms(f: &LaurentPoly, k: u32) -> u128 {
    let n = f.nvars() as u32;
    let scale = 2f64.powi((k * n.saturating_sub(1)) as i32);
    let est = bounding_box_widths(f)
        .iter()
        .map(|&w| scale * w as f64 + 1.0)
        .product::<f64>();
    if est >= u128::MAX as f64 {
        u128::MAX
    } else {
        est as u128
    }
}

pub fn quick_cyclic_resultant(f: &LaurentPoly, k: u32) -> Result<LaurentPoly, CycresError> {
    quick_cyclic_resultant_with(f, k, &QuickOptions::default())
}

/// `cres(f; 2^k)` by repeated sign-flip squaring.
///
/// For each variable `z_j` and each `l = 1..=k` the running product `P` is
/// replaced by `P · P'`, where `P'` is `P` with the terms whose `z_j`-exponent
/// is not divisible by `2^l` negated.
pub fn quick_cyclic_resultant_with(
    f: &LaurentPoly,
    k: u32,
    opts: &QuickOptions,
) -> Result<LaurentPoly, CycresError> {
    if f.is_zero() {
        return Err(CycresError::ZeroPolynomial);
    }
    if k == 0 {
        return Ok(f.clone());
    }
    let estimated = estimate_terms(f, k);
    if estimated > opts.max_terms {
        return Err(CycresError::MemoryBudget {
            estimated,
            cap: opts.max_terms,
        });
    }
    let order: Vec<usize> = opts
        .var_order
        .clone()
        .unwrap_or_else(|| (0..f.nvars()).collect());
    let mut acc = f.clone();
    for &var in &order {
        for level in 1..=k {
            let multiplier = acc.flip_signs(var, level)?;
            acc = acc.try_mul(&multiplier)?;
        }
    }
    Ok(acc)
}

/// `cres(f; 2^j)` for `j = 0..=kmax`, sharing nothing between levels except
/// the input.
pub fn quick_levels(
    f: &LaurentPoly,
    kmax: u32,
    max_terms: u128,
) -> Result<Vec<LaurentPoly>, CycresError> {
    let opts = QuickOptions {
        max_terms,
        var_order: None,
    };
    (0..=kmax)
        .map(|k| quick_cyclic_resultant_with(f, k, &opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn linear_univariate() {
        let f = parse("z1+1", 1).unwrap();
        assert_eq!(
            quick_cyclic_resultant(&f, 1).unwrap(),
            parse("1-z1^2", 1).unwrap()
        );
        assert_eq!(quick_cyclic_resultant(&f, 0).unwrap(), f);
        // (1 - z^2)(1 - (-z^2)) ... = 1 - z^4 at r = 4
        assert_eq!(
            quick_cyclic_resultant(&f, 2).unwrap(),
            parse("1-z1^4", 1).unwrap()
        );
    }

    #[test]
    fn level_one_running_example() {
        let f = parse("z1^3 + z1*z2 + z2^3 + 1", 2).unwrap();
        let g = quick_cyclic_resultant(&f, 1).unwrap();
        assert_eq!(g.num_terms(), 10);
        assert_eq!(g.total_degree(), Some(12));
        assert!(g.exponents().all(|e| e.0.iter().all(|x| x % 2 == 0)));
    }

    #[test]
    fn variable_order_is_irrelevant() {
        let f = parse("(2+1i)*z1^2*z2 - z1*z2^-1 + 3", 2).unwrap();
        let fwd = quick_cyclic_resultant(&f, 2).unwrap();
        let opts = QuickOptions {
            var_order: Some(vec![1, 0]),
            ..Default::default()
        };
        let rev = quick_cyclic_resultant_with(&f, 2, &opts).unwrap();
        assert_eq!(fwd, rev);
    }

    #[test]
    fn laurent_exponents_are_multiples() {
        let f = parse("z1^-3 + 2*z1 + z2^-1", 2).unwrap();
        let g = quick_cyclic_resultant(&f, 3).unwrap();
        assert!(g
            .exponents()
            .all(|e| e.0.iter().all(|x| x.rem_euclid(8) == 0)));
    }

    #[test]
    fn guard_and_zero() {
        let f = parse("z1^3 + z1*z2 + z2^3 + 1", 2).unwrap();
        let opts = QuickOptions {
            max_terms: 100,
            var_order: None,
        };
        assert!(matches!(
            quick_cyclic_resultant_with(&f, 6, &opts),
            Err(CycresError::MemoryBudget { .. })
        ));
        assert_eq!(
            quick_cyclic_resultant(&LaurentPoly::zero(2), 1),
            Err(CycresError::ZeroPolynomial)
        );
    }

    #[test]
    fn estimate_bounds_actual() {
        let f = parse("z1^3 + z1*z2 + z2^3 + 1", 2).unwrap();
        for k in 1..=3 {
            let g = quick_cyclic_resultant(&f, k).unwrap();
            assert!(g.num_terms() as u128 <= estimate_terms(&f, k));
        }
        assert_eq!(estimate_terms(&parse("z1^5+1", 1).unwrap(), 10), 6);
    }
}
