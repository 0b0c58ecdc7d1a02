//! Newton polytopes: hull vertices, facet inequalities and lattice points.
//!
//! The hull is found by brute force over affinely independent subsets of the
//! support, which is fine for the handful of terms a Laurent polynomial of
//! interest has in dimension ≤ 3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Exponent, LaurentPoly, PolyError};

/// `normal · x ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl HalfSpace {
    pub fn contains(&self, x: &[i64]) -> bool {
        dot(&self.normal, x) <= self.offset as i128
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonData {
    /// Counterclockwise for full-dimensional planar polytopes, lexicographic
    /// otherwise.
    pub vertices: Vec<Exponent>,
    /// `New(f) ∩ Z^n` in lexicographic order.
    pub lattice_points: Vec<Exponent>,
    /// Facet inequalities relative to the affine hull.
    pub facets: Vec<HalfSpace>,
    /// Equations `normal · x = offset` cutting out the affine hull.
    pub equalities: Vec<HalfSpace>,
    /// Dimension of the affine hull.
    pub dim: usize,
}

impl NewtonData {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.equalities
            .iter()
            .all(|h| dot(&h.normal, x) == h.offset as i128)
            && self.facets.iter().all(|h| h.contains(x))
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Reduced row echelon form over `Q`; returns pivot columns.
fn rref(rows: &[Vec<i64>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (m, pivots)
}

pub(crate) fn rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Primitive integer basis of `{v : row · v = 0 for all rows}`.
fn null_space(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = BigRational::from_integer(1.into());
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][fc].clone();
            }
            let den = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.iter()
                .map(|x| (x / &g).to_i64().expect("normal fits in i64"))
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Andrew's monotone chain; output counterclockwise from the lexicographic minimum.
fn planar_hull(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Newton polytope of a nonzero Laurent polynomial.
pub fn newton(p: &LaurentPoly) -> Result<NewtonData, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = p.nvars();
    let support: Vec<Vec<i64>> = p.exponents().map(|e| e.0.clone()).collect();
    newton_of_points(&support, n)
}

pub fn newton_of_points(support: &[Vec<i64>], n: usize) -> Result<NewtonData, PolyError> {
    if support.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let base = &support[0];
    let directions: Vec<Vec<i64>> = support[1..].iter().map(|q| diff(q, base)).collect();
    let dim = rank(&directions, n);
    let eq_normals = null_space(&directions, n);
    let equalities: Vec<HalfSpace> = eq_normals
        .iter()
        .map(|v| HalfSpace {
            offset: dot(v, base) as i64,
            normal: v.clone(),
        })
        .collect();

    let mut facets: Vec<HalfSpace> = Vec::new();
    if dim > 0 {
        for combo in combinations(support.len(), dim) {
            let q0 = &support[combo[0]];
            let mut rows: Vec<Vec<i64>> =
                combo[1..].iter().map(|&i| diff(&support[i], q0)).collect();
            rows.extend(eq_normals.iter().cloned());
            let ns = null_space(&rows, n);
            if ns.len() != 1 {
                continue;
            }
            let normal = &ns[0];
            let level = dot(normal, q0);
            let values: Vec<i128> = support.iter().map(|x| dot(normal, x)).collect();
            let hs = if values.iter().all(|&v| v <= level) {
                HalfSpace {
                    normal: normal.clone(),
                    offset: level as i64,
                }
            } else if values.iter().all(|&v| v >= level) {
                HalfSpace {
                    normal: normal.iter().map(|x| -x).collect(),
                    offset: -level as i64,
                }
            } else {
                continue;
            };
            if !facets.contains(&hs) {
                facets.push(hs);
            }
        }
        facets.sort();
    }

    let mut vertices: Vec<Vec<i64>> = if dim == 0 {
        vec![base.clone()]
    } else {
        support
            .iter()
            .filter(|x| {
                let tight: Vec<Vec<i64>> = facets
                    .iter()
                    .filter(|h| dot(&h.normal, x) == h.offset as i128)
                    .map(|h| h.normal.clone())
                    .collect();
                rank(&tight, n) == dim
            })
            .cloned()
            .collect()
    };
    if n == 2 && dim == 2 {
        vertices = planar_hull(&vertices);
    } else {
        vertices.sort();
    }

    let lo: Vec<i64> = (0..n)
        .map(|i| support.iter().map(|x| x[i]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| support.iter().map(|x| x[i]).max().unwrap())
        .collect();
    let data = NewtonData {
        vertices: vertices.into_iter().map(Exponent).collect(),
        lattice_points: Vec::new(),
        facets,
        equalities,
        dim,
    };
    let mut lattice = Vec::new();
    let mut cur = lo.clone();
    'scan: loop {
        if data.contains(&cur) {
            lattice.push(Exponent(cur.clone()));
        }
        for i in (0..n).rev() {
            if cur[i] < hi[i] {
                cur[i] += 1;
                continue 'scan;
            }
            cur[i] = lo[i];
        }
        break;
    }
    Ok(NewtonData {
        lattice_points: lattice,
        ..data
    })
}

/// Width of the support along each axis.
pub(crate) fn bounding_box_widths(p: &LaurentPoly) -> Vec<i64> {
    (0..p.nvars())
        .map(|v| p.degree_range(v).map(|(lo, hi)| hi - lo).unwrap_or(0))
        .collect()
}
