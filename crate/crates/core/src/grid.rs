//! Grid membership approximation of an amoeba.
//!
//! Every point of `[s, t]^n ∩ (ℓZ)^n` is tested against `cres(f; 2^j)` for
//! `j = 0, 1, …, kmax` and the first certificate wins. Certified points are
//! outside the amoeba; uncertified points are presumed inside.

use std::fmt::Write as _;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::cycres::{quick_levels, CycresError, DEFAULT_MAX_TERMS};
use crate::lopsided::{order_from_certificate, LogPoint, LopsidedError, OrderVector, PreparedPoly};
use crate::poly::LaurentPoly;

pub const DEFAULT_MAX_POINTS: u128 = 10_000_000;

/// Points processed per parallel batch while streaming.
const BATCH: usize = 4096;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    InvalidSpec(String),
    #[error("grid has {points} points, cap is {cap}")]
    TooManyPoints { points: u128, cap: u128 },
    #[error("grid has {got} dimensions, polynomial has {expected} variables")]
    DimensionMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Cycres(#[from] CycresError),
    #[error(transparent)]
    Lopsided(#[from] LopsidedError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub lo: BigRational,
    pub hi: BigRational,
    pub step: BigRational,
    pub dims: usize,
}

impl GridSpec {
    pub fn new(
        lo: BigRational,
        hi: BigRational,
        step: BigRational,
        dims: usize,
    ) -> Result<Self, GridError> {
        let spec = Self { lo, hi, step, dims };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GridError> {
        if self.dims == 0 {
            return Err(GridError::InvalidSpec("dimension must be positive".into()));
        }
        if self.lo >= self.hi {
            return Err(GridError::InvalidSpec(
                "lower bound must be below upper bound".into(),
            ));
        }
        if !self.step.is_positive() {
            return Err(GridError::InvalidSpec("step must be positive".into()));
        }
        if !((&self.hi - &self.lo) / &self.step).is_integer() {
            return Err(GridError::InvalidSpec(
                "(hi - lo) / step must be an integer".into(),
            ));
        }
        Ok(())
    }

    /// Integer multipliers `m` with `m·ℓ ∈ [lo, hi]`.
    fn multiplier_range(&self) -> (BigInt, BigInt) {
        (
            (&self.lo / &self.step).ceil().to_integer(),
            (&self.hi / &self.step).floor().to_integer(),
        )
    }

    pub fn points_per_axis(&self) -> u64 {
        let (a, b) = self.multiplier_range();
        (b - a + 1u32).to_u64().unwrap_or(u64::MAX)
    }

    pub fn num_points(&self) -> u128 {
        (self.points_per_axis() as u128)
            .checked_pow(self.dims as u32)
            .unwrap_or(u128::MAX)
    }

    /// Grid point number `index` in row-major order (last coordinate fastest).
    pub fn point(&self, mut index: u64) -> LogPoint {
        let per = self.points_per_axis();
        let (first, _) = self.multiplier_range();
        let mut coords = vec![BigRational::zero(); self.dims];
        for c in coords.iter_mut().rev() {
            let m = &first + BigInt::from(index % per);
            *c = BigRational::from_integer(m) * &self.step;
            index /= per;
        }
        LogPoint::new(coords)
    }
}

/// All grid points in row-major order.
pub fn make_grid(spec: &GridSpec, max_points: u128) -> Result<Vec<LogPoint>, GridError> {
    spec.validate()?;
    let points = spec.num_points();
    if points > max_points {
        return Err(GridError::TooManyPoints {
            points,
            cap: max_points,
        });
    }
    Ok((0..points as u64).map(|i| spec.point(i)).collect())
}

/// Radius guaranteeing that every ε-ball in the box holds a grid point:
/// half the diagonal of a grid cell, `ℓ√n / 2`.
pub fn epsilon_for_grid(spec: &GridSpec) -> f64 {
    epsilon_squared_for_grid(spec)
        .to_f64()
        .unwrap_or(f64::NAN)
        .sqrt()
}

/// `ε² = ℓ²·n / 4`, exactly.
pub fn epsilon_squared_for_grid(spec: &GridSpec) -> BigRational {
    &spec.step * &spec.step * BigRational::from_integer(spec.dims.into())
        / BigRational::from_integer(4.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipRecord {
    pub point: LogPoint,
    /// `true` when no level certified the point (presumed amoeba member).
    pub in_amoeba: bool,
    pub level: Option<u32>,
    pub order: Option<OrderVector>,
    /// Set when a certificate was found but rejected as inconsistent.
    pub diagnostic: Option<String>,
}

impl MembershipRecord {
    pub fn bit(&self) -> u8 {
        u8::from(self.in_amoeba)
    }
}

#[derive(Clone, Debug)]
pub struct GridOptions {
    pub max_terms: u128,
    pub max_points: u128,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
            max_points: DEFAULT_MAX_POINTS,
            threads: None,
        }
    }
}

/// The precomputed chain `cres(f; 2^j)`, `j = 0..=kmax`, shared by all points.
pub struct CertificateChain {
    nvars: usize,
    levels: Vec<PreparedPoly>,
}

impl CertificateChain {
    pub fn new(f: &LaurentPoly, kmax: u32, max_terms: u128) -> Result<Self, GridError> {
        let cres = quick_levels(f, kmax, max_terms)?;
        let levels = cres
            .iter()
            .enumerate()
            .map(|(j, g)| PreparedPoly::new(g, j as u32))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            nvars: f.nvars(),
            levels,
        })
    }

    pub fn kmax(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, j: u32) -> &PreparedPoly {
        &self.levels[j as usize]
    }

    /// Escalates through the levels until one certifies `point`.
    pub fn classify(&self, point: LogPoint) -> Result<MembershipRecord, GridError> {
        for prepared in &self.levels {
            let cert = prepared.test(&point)?;
            if !cert.lopsided {
                continue;
            }
            let record = match order_from_certificate(&cert, self.nvars, cert.level) {
                Ok(order) => MembershipRecord {
                    point,
                    in_amoeba: false,
                    level: Some(cert.level),
                    order: Some(order),
                    diagnostic: None,
                },
                Err(e) => MembershipRecord {
                    point,
                    in_amoeba: true,
                    level: None,
                    order: None,
                    diagnostic: Some(format!("level {}: {e}", cert.level)),
                },
            };
            return Ok(record);
        }
        Ok(MembershipRecord {
            point,
            in_amoeba: true,
            level: None,
            order: None,
            diagnostic: None,
        })
    }
}

fn with_pool<T: Send>(
    threads: Option<usize>,
    job: impl FnOnce() -> T + Send,
) -> Result<T, GridError> {
    match threads {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| GridError::ThreadPool(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

/// Classifies every grid point, handing records to `sink` in grid order.
pub fn approximate_amoeba_streaming<F>(
    f: &LaurentPoly,
    spec: &GridSpec,
    kmax: u32,
    opts: &GridOptions,
    mut sink: F,
) -> Result<(), GridError>
where
    F: FnMut(MembershipRecord) -> Result<(), GridError> + Send,
{
    spec.validate()?;
    if spec.dims != f.nvars() {
        return Err(GridError::DimensionMismatch {
            got: spec.dims,
            expected: f.nvars(),
        });
    }
    let total = spec.num_points();
    if total > opts.max_points {
        return Err(GridError::TooManyPoints {
            points: total,
            cap: opts.max_points,
        });
    }
    let chain = CertificateChain::new(f, kmax, opts.max_terms)?;
    let total = total as u64;
    with_pool(opts.threads, || {
        let mut start = 0u64;
        while start < total {
            let end = (start + BATCH as u64).min(total);
            let batch: Vec<MembershipRecord> = (start..end)
                .into_par_iter()
                .map(|i| chain.classify(spec.point(i)))
                .collect::<Result<_, _>>()?;
            for record in batch {
                sink(record)?;
            }
            start = end;
        }
        Ok(())
    })?
}

pub fn approximate_amoeba(
    f: &LaurentPoly,
    spec: &GridSpec,
    kmax: u32,
    opts: &GridOptions,
) -> Result<Vec<MembershipRecord>, GridError> {
    let mut out = Vec::new();
    approximate_amoeba_streaming(f, spec, kmax, opts, |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

fn fmt_coord(c: &BigRational) -> String {
    format!("{}", c.to_f64().unwrap_or(f64::NAN))
}

pub fn csv_header(n: usize) -> String {
    let mut h = String::new();
    for i in 1..=n {
        let _ = write!(h, "w{i},");
    }
    h.push_str("bit,level");
    for i in 1..=n {
        let _ = write!(h, ",order{i}");
    }
    h
}

/// `w1,...,wn,bit,level,order1,...,ordern`, absent values left empty.
pub fn csv_line(r: &MembershipRecord) -> String {
    let n = r.point.dim();
    let mut fields: Vec<String> = r.point.coords.iter().map(fmt_coord).collect();
    fields.push(r.bit().to_string());
    fields.push(r.level.map(|l| l.to_string()).unwrap_or_default());
    match &r.order {
        Some(o) => fields.extend(o.0.iter().map(|x| x.to_string())),
        None => fields.extend(std::iter::repeat_n(String::new(), n)),
    }
    fields.join(",")
}

pub fn json_line(r: &MembershipRecord) -> String {
    let point: Vec<f64> = r.point.to_f64();
    json!({
        "point": point,
        "inAmoeba": r.in_amoeba,
        "level": r.level,
        "order": r.order.as_ref().map(|o| o.0.clone()),
    })
    .to_string()
}

pub fn write_csv<W: Write>(out: &mut W, records: &[MembershipRecord]) -> io::Result<()> {
    let n = records.first().map(|r| r.point.dim()).unwrap_or(0);
    writeln!(out, "{}", csv_header(n))?;
    for r in records {
        writeln!(out, "{}", csv_line(r))?;
    }
    Ok(())
}

pub fn write_json_lines<W: Write>(out: &mut W, records: &[MembershipRecord]) -> io::Result<()> {
    for r in records {
        writeln!(out, "{}", json_line(r))?;
    }
    Ok(())
}

/// Fill color by certifying level: turquoise up to level 2, light blue at 3,
/// dark blue from 4, red for presumed amoeba points.
pub fn level_color(r: &MembershipRecord) -> &'static str {
    match r.level {
        None => "#d62728",
        Some(0..=2) => "#40e0d0",
        Some(3) => "#87cefa",
        Some(_) => "#00008b",
    }
}

/// Scatter plot of a planar grid run.
pub fn scatter_svg(records: &[MembershipRecord], spec: &GridSpec, size: u32) -> String {
    let lo = spec.lo.to_f64().unwrap_or(0.0);
    let hi = spec.hi.to_f64().unwrap_or(1.0);
    let per = spec.points_per_axis().max(1) as f64;
    let scale = size as f64 / (hi - lo);
    let radius = (size as f64 / per / 2.0).max(0.5);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for r in records {
        let w = r.point.to_f64();
        if w.len() < 2 {
            continue;
        }
        let x = (w[0] - lo) * scale;
        let y = size as f64 - (w[1] - lo) * scale;
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{radius:.3}" fill="{}"/>"#,
            level_color(r)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
