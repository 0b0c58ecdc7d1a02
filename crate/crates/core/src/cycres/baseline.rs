use std::time::Instant;

use num_traits::One;

use crate::poly::{Exponent, GaussianRational, LaurentPoly};

use super::CycresError;

#[derive(Clone, Debug, Default)]
pub struct BaselineOptions {
    /// Abort with [`CycresError::Timeout`] once this instant has passed.
    pub deadline: Option<Instant>,
    /// Refuse Sylvester matrices larger than this many rows; `None` = no cap.
    pub max_dimension: Option<usize>,
}

pub fn iterated_resultant_baseline(f: &LaurentPoly, r: u32) -> Result<LaurentPoly, CycresError> {
    iterated_resultant_baseline_with(f, r, &BaselineOptions::default())
}

/// `cres(f; r)` as nested resultants `Res_u(g(.., u·z_j, ..), u^r - 1)`, one
/// variable at a time, each a Sylvester determinant evaluated by fraction-free
/// elimination over the polynomial ring in the remaining variables.
///
/// The resultant is taken as `Res(u^r - 1, g)`, so with the monic cyclotomic
/// argument first it equals `∏_{ξ^r = 1} g(ξ)` with no extra sign.
pub fn iterated_resultant_baseline_with(
    f: &LaurentPoly,
    r: u32,
    opts: &BaselineOptions,
) -> Result<LaurentPoly, CycresError> {
    if f.is_zero() {
        return Err(CycresError::ZeroPolynomial);
    }
    if r == 0 {
        return Err(CycresError::InvalidOrder);
    }
    let n = f.nvars();

    // f = z^s · f0 with f0 a genuine polynomial; each tuple contributes
    // (ζz)^s, and ∏_{ζ^r=1} ζ = (-1)^(r+1).
    let shift: Vec<i64> = (0..n)
        .map(|v| f.degree_range(v).map(|(lo, _)| lo).unwrap_or(0))
        .collect();
    let shift = Exponent(shift);
    let mut g = f.shift(&Exponent(shift.0.iter().map(|s| -s).collect()));

    for var in 0..n {
        g = cyclic_resultant_in(&g, var, r, opts)?;
    }

    let tuples_per_var = (r as u128).pow(n as u32 - 1);
    let sign_exp: u128 = if r.is_multiple_of(2) {
        shift
            .0
            .iter()
            .map(|s| s.unsigned_abs() as u128 % 2)
            .sum::<u128>()
            * (tuples_per_var % 2)
    } else {
        0
    };
    let scale = (r as i64).pow(n as u32);
    let mut out = g.shift(&shift.scale(scale));
    if sign_exp % 2 == 1 {
        out = -&out;
    }
    Ok(out)
}

fn cyclic_resultant_in(
    g: &LaurentPoly,
    var: usize,
    r: u32,
    opts: &BaselineOptions,
) -> Result<LaurentPoly, CycresError> {
    let nvars = g.nvars();
    let by_power = g.split_by_var(var);
    let delta = *by_power.keys().next_back().expect("nonzero input") as usize;
    let r = r as usize;
    if delta == 0 {
        return Ok(g.pow(r as u32));
    }
    let size = r + delta;
    if let Some(cap) = opts.max_dimension {
        if size > cap {
            return Err(CycresError::MemoryBudget {
                estimated: size as u128,
                cap: cap as u128,
            });
        }
    }

    // Rows 0..delta hold u^r - 1, rows delta.. hold g; columns are powers of u
    // from high to low.
    let zero = LaurentPoly::zero(nvars);
    let one = LaurentPoly::one(nvars);
    let minus_one = LaurentPoly::constant(nvars, -GaussianRational::one());
    let mut m: Vec<Vec<LaurentPoly>> = vec![vec![zero.clone(); size]; size];
    for (row, line) in m.iter_mut().enumerate().take(delta) {
        line[row] = one.clone();
        line[row + r] = minus_one.clone();
    }
    for i in 0..r {
        let row = delta + i;
        for (&p, c) in &by_power {
            let col = i + (delta - p as usize);
            m[row][col] = c.clone();
        }
    }
    bareiss_determinant(m, opts)
}

fn bareiss_determinant(
    mut m: Vec<Vec<LaurentPoly>>,
    opts: &BaselineOptions,
) -> Result<LaurentPoly, CycresError> {
    let size = m.len();
    let nvars = m[0][0].nvars();
    let mut prev = LaurentPoly::one(nvars);
    let mut negate = false;
    for k in 0..size {
        let pivot = (k..size)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms());
        let Some(p) = pivot else {
            return Ok(LaurentPoly::zero(nvars));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        if k + 1 == size {
            break;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pk = &pivot_row[k];
        for row in tail.iter_mut() {
            if let Some(deadline) = opts.deadline {
                if Instant::now() > deadline {
                    return Err(CycresError::Timeout);
                }
            }
            let lead = std::mem::replace(&mut row[k], LaurentPoly::zero(nvars));
            for j in (k + 1)..size {
                let mut v = row[j].try_mul(pk)?;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = v.try_sub(&lead.try_mul(&pivot_row[j])?)?;
                }
                row[j] = if v.is_zero() { v } else { v.exact_div(&prev)? };
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    Ok(if negate { -&det } else { det })
}
