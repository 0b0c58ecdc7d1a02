use std::collections::HashMap;
use std::time::Instant;

use amoeba::cycres::quick_cyclic_resultant;
use amoeba::grid::{approximate_amoeba, CertificateChain, GridOptions, GridSpec, MembershipRecord};
use amoeba::lopsided::OrderVector;
use amoeba::poly::{newton, parse, LaurentPoly};
use amoeba::semialg::semialg_description;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn fig_poly() -> LaurentPoly {
    parse("z1^3 + z2^3 + 2*z1*z2 + 1", 2).unwrap()
}

fn run(f: &LaurentPoly, step: BigRational, kmax: u32) -> (GridSpec, Vec<MembershipRecord>) {
    let spec = GridSpec::new(q(-2, 1), q(2, 1), step, 2).unwrap();
    let recs = approximate_amoeba(f, &spec, kmax, &GridOptions::default()).unwrap();
    (spec, recs)
}

#[test]
fn stored_level_is_minimal() {
    let f = fig_poly();
    let (_, recs) = run(&f, q(1, 10), 4);
    let chain = CertificateChain::new(&f, 4, u128::MAX).unwrap();
    for r in recs {
        let top = r.level.map(|l| l as i64).unwrap_or(4);
        for j in 0..top {
            assert!(
                !chain.level(j as u32).test(&r.point).unwrap().lopsided,
                "{:?} certified below {top}",
                r.point
            );
        }
        if let Some(l) = r.level {
            assert!(chain.level(l).test(&r.point).unwrap().lopsided);
        }
    }
}

#[test]
fn presumed_points_satisfy_the_top_level_system() {
    let f = fig_poly();
    let kmax = 3;
    let (_, recs) = run(&f, q(1, 10), kmax);
    let sys = semialg_description(&f, kmax, None).unwrap();
    let presumed: Vec<_> = recs.iter().filter(|r| r.bit() == 1).collect();
    assert!(!presumed.is_empty());
    for r in presumed {
        assert!(sys.contains_log(&r.point).unwrap(), "{:?}", r.point);
    }
}

#[test]
fn orders_lie_in_the_newton_polytope() {
    for b in [-4i64, 2, 5] {
        let sign = if b < 0 { '-' } else { '+' };
        let f = parse(&format!("z1^3 + z2^3 {sign} {}*z1*z2 + 1", b.abs()), 2).unwrap();
        let nd = newton(&f).unwrap();
        let (_, recs) = run(&f, q(1, 20), 4);
        for o in recs.iter().filter_map(|r| r.order.as_ref()) {
            assert!(nd.contains(&o.0), "b={b}: order {:?}", o.0);
        }
    }
}

/// Along every grid row and column, a run of certified points with a common
/// order should not be interrupted by a different order. Violations are
/// reported only: thin tentacles of the amoeba can fall between grid points.
#[test]
fn complement_components_look_convex() {
    let f = fig_poly();
    let (spec, recs) = run(&f, q(1, 20), 4);
    let m = spec.points_per_axis() as usize;
    let order_at = |i: usize, j: usize| recs[i * m + j].order.clone();
    let mut violations = 0;
    let mut scan = |line: Vec<Option<OrderVector>>| {
        let mut last_seen: HashMap<OrderVector, usize> = HashMap::new();
        for (pos, o) in line.iter().enumerate() {
            if let Some(o) = o {
                if let Some(&prev) = last_seen.get(o) {
                    let between = &line[prev + 1..pos];
                    if !between.is_empty()
                        && between.iter().all(|x| x.is_some())
                        && between.iter().any(|x| x.as_ref() != Some(o))
                    {
                        violations += 1;
                    }
                }
                last_seen.insert(o.clone(), pos);
            }
        }
    };
    for i in 0..m {
        scan((0..m).map(|j| order_at(i, j)).collect());
        scan((0..m).map(|j| order_at(j, i)).collect());
    }
    println!(
        "convexity sweep: {violations} violations over {} lines",
        2 * m
    );
}

#[test]
fn records_are_schedule_independent() {
    let f = fig_poly();
    let spec = GridSpec::new(q(-2, 1), q(2, 1), q(1, 20), 2).unwrap();
    let base = approximate_amoeba(
        &f,
        &spec,
        4,
        &GridOptions {
            threads: Some(1),
            ..GridOptions::default()
        },
    )
    .unwrap();
    for threads in [2, 3, 8] {
        let other = approximate_amoeba(
            &f,
            &spec,
            4,
            &GridOptions {
                threads: Some(threads),
                ..GridOptions::default()
            },
        )
        .unwrap();
        assert_eq!(base, other);
    }
}

/// Runtime of the univariate quick resultant grows about linearly in the level
/// when the coefficients stay bounded (all roots on the unit circle).
#[test]
fn univariate_runtime_is_linear_in_level() {
    let f = parse("z1^4 + z1^3 + z1^2 + z1 + 1", 1).unwrap();
    let levels: Vec<u32> = (4..=16).collect();
    let reps = 200;
    let times: Vec<f64> = levels
        .iter()
        .map(|&k| {
            (0..5)
                .map(|_| {
                    let t = Instant::now();
                    for _ in 0..reps {
                        std::hint::black_box(quick_cyclic_resultant(&f, k).unwrap());
                    }
                    t.elapsed().as_secs_f64()
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let xs: Vec<f64> = levels.iter().map(|&k| (k as f64).ln()).collect();
    let ys: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!(slope <= 1.3, "log-log slope {slope:.3}");
    assert_eq!(quick_cyclic_resultant(&f, 16).unwrap().num_terms(), 5);
}
