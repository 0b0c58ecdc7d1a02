//! Timing of the quick cyclic resultant against the iterated Sylvester
//! baseline, plus the size statistics of the result.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::cycres::{
    iterated_resultant_baseline_with, quick_cyclic_resultant_with, BaselineOptions, CycresError,
    QuickOptions,
};
use crate::poly::{parse, LaurentPoly};

pub const DEFAULT_BASELINE_TIMEOUT: Duration = Duration::from_secs(300);

pub const F1: &str = "z1^3 + z1*z2 + z2^3 + 1";
pub const F2: &str = "(5+1i)*z1^3 + (0+1i)*z1*z2 + (4+1i)*z2^3 + 1";
pub const F3: &str = "z1^4*z2 + z1*z2*z3^5 + z1^2*z2^4 + z1*z2^2 + z1*z2*z3 + z1*z2*z3^3 + 1";

#[derive(Clone, Debug)]
pub struct BenchEntry {
    pub id: String,
    pub poly: LaurentPoly,
    pub level: u32,
    pub runs: u32,
}

impl BenchEntry {
    pub fn new(id: impl Into<String>, poly: LaurentPoly, level: u32, runs: u32) -> Self {
        Self {
            id: id.into(),
            poly,
            level,
            runs: runs.max(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub id: String,
    pub level: u32,
    pub runs: u32,
    pub mean_quick_secs: Option<f64>,
    /// `None` when not requested, timed out, or failed.
    pub mean_baseline_secs: Option<f64>,
    pub factor: Option<f64>,
    pub terms: usize,
    pub degree: i64,
    pub max_coeff_digits: usize,
    pub baseline_timed_out: bool,
    /// Whether the baseline reproduced the quick result exactly.
    pub agrees: Option<bool>,
    pub error: Option<String>,
}

pub fn f1() -> LaurentPoly {
    parse(F1, 2).expect("valid literal")
}

pub fn f2() -> LaurentPoly {
    parse(F2, 2).expect("valid literal")
}

pub fn f3() -> LaurentPoly {
    parse(F3, 3).expect("valid literal")
}

/// The rows of the runtime comparison table, with their run counts.
pub fn runtime_suite() -> Vec<BenchEntry> {
    vec![
        BenchEntry::new("f1", f1(), 3, 100),
        BenchEntry::new("f1", f1(), 4, 100),
        BenchEntry::new("f1", f1(), 5, 5),
        BenchEntry::new("f1", f1(), 6, 1),
        BenchEntry::new("f2", f2(), 3, 100),
        BenchEntry::new("f2", f2(), 4, 100),
        BenchEntry::new("f2", f2(), 5, 3),
        BenchEntry::new("f3", f3(), 3, 10),
    ]
}

/// `f1` at levels `1..=6`, one run each, for the size table.
pub fn size_suite() -> Vec<BenchEntry> {
    (1..=6).map(|k| BenchEntry::new("f1", f1(), k, 1)).collect()
}

/// Runs each entry in turn on the calling thread.
pub fn run_bench(
    suite: &[BenchEntry],
    measure_baseline: bool,
    baseline_timeout: Duration,
) -> Vec<BenchResult> {
    suite
        .iter()
        .map(|e| run_entry(e, measure_baseline, baseline_timeout))
        .collect()
}

fn run_entry(e: &BenchEntry, measure_baseline: bool, timeout: Duration) -> BenchResult {
    let mut res = BenchResult {
        id: e.id.clone(),
        level: e.level,
        runs: e.runs,
        mean_quick_secs: None,
        mean_baseline_secs: None,
        factor: None,
        terms: 0,
        degree: 0,
        max_coeff_digits: 0,
        baseline_timed_out: false,
        agrees: None,
        error: None,
    };
    let opts = QuickOptions::default();
    let mut quick = None;
    let mut total = Duration::ZERO;
    for _ in 0..e.runs {
        let t = Instant::now();
        match quick_cyclic_resultant_with(&e.poly, e.level, &opts) {
            Ok(g) => {
                total += t.elapsed();
                quick = Some(g);
            }
            Err(err) => {
                res.error = Some(err.to_string());
                return res;
            }
        }
    }
    let quick = quick.expect("at least one run");
    res.mean_quick_secs = Some(total.as_secs_f64() / e.runs as f64);
    res.terms = quick.num_terms();
    res.degree = quick.total_degree().unwrap_or(0);
    res.max_coeff_digits = quick.max_abs_numerator().to_string().len();

    if !measure_baseline {
        return res;
    }
    let r = 1u32 << e.level;
    let mut total = Duration::ZERO;
    for _ in 0..e.runs {
        let opts = BaselineOptions {
            deadline: Some(Instant::now() + timeout),
            max_dimension: None,
        };
        let t = Instant::now();
        match iterated_resultant_baseline_with(&e.poly, r, &opts) {
            Ok(g) => {
                total += t.elapsed();
                res.agrees = Some(g == quick);
            }
            Err(CycresError::Timeout) => {
                res.baseline_timed_out = true;
                return res;
            }
            Err(err) => {
                res.error = Some(format!("baseline: {err}"));
                return res;
            }
        }
    }
    let mean = total.as_secs_f64() / e.runs as f64;
    res.mean_baseline_secs = Some(mean);
    res.factor = res.mean_quick_secs.filter(|&q| q > 0.0).map(|q| mean / q);
    res
}

pub const CSV_HEADER: &str =
    "polynomial,level,runs,quick_s,baseline_s,factor,terms,degree,max_coeff_digits,baseline_timed_out,agrees,error";

pub fn to_csv(results: &[BenchResult]) -> String {
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in results {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.id,
            r.level,
            r.runs,
            opt(r.mean_quick_secs),
            opt(r.mean_baseline_secs),
            r.factor.map(|x| format!("{x:.2}")).unwrap_or_default(),
            r.terms,
            r.degree,
            r.max_coeff_digits,
            r.baseline_timed_out,
            r.agrees.map(|b| b.to_string()).unwrap_or_default(),
            r.error.as_deref().unwrap_or("").replace(',', ";"),
        );
    }
    out
}

/// Fixed-width table with the runtime comparison columns followed by sizes.
pub fn to_table(results: &[BenchResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:>5} {:>5} {:>12} {:>12} {:>10} {:>7} {:>7} {:>7}",
        "Polynomial",
        "Level",
        "Runs",
        "Quick (s)",
        "Iterated (s)",
        "Factor",
        "Terms",
        "Degree",
        "Digits"
    );
    for r in results {
        let quick = r
            .mean_quick_secs
            .map(|x| format!("{x:.4}"))
            .unwrap_or_else(|| "-".into());
        let base = match (r.mean_baseline_secs, r.baseline_timed_out) {
            (Some(x), _) => format!("{x:.4}"),
            (None, true) => "timeout".into(),
            (None, false) => "-".into(),
        };
        let factor = r
            .factor
            .map(|x| format!("{x:.2}"))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<10} {:>5} {:>5} {:>12} {:>12} {:>10} {:>7} {:>7} {:>7}",
            r.id, r.level, r.runs, quick, base, factor, r.terms, r.degree, r.max_coeff_digits
        );
        if let Some(e) = &r.error {
            let _ = writeln!(out, "  error: {e}");
        }
    }
    out
}
