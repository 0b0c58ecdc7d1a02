use std::path::PathBuf;
use std::process::{Command, Output};

use amoeba::grid::{approximate_amoeba, GridOptions, GridSpec};
use amoeba::lopsided::{is_lopsided, order_from_certificate};
use amoeba::poly::parse;
use num_rational::BigRational;
use serde_json::Value;

fn amoeba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amoeba"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = amoeba(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("amoeba-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn cres_prints_canonical_polynomials() {
    assert_eq!(stdout(&["cres", "-f", "z1+1", "-k", "1"]).trim(), "-z1^2+1");
    assert_eq!(stdout(&["cres", "-f", "z1", "-k", "0"]).trim(), "z1");
    let text = stdout(&["cres", "-f", "z1^3+z1*z2+z2^3+1", "-k", "1"]);
    let g = parse(text.trim(), 2).unwrap();
    assert_eq!((g.num_terms(), g.total_degree()), (10, Some(12)));
}

#[test]
fn cres_reads_poly_files_and_json() {
    let path = tmp("f1.txt");
    std::fs::write(&path, "z1^3 + z1*z2 + z2^3 + 1\n").unwrap();
    let out = stdout(&[
        "cres",
        "--poly-file",
        path.to_str().unwrap(),
        "-k",
        "2",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"], 31);
    assert_eq!(v["degree"], 48);
    assert_eq!(v["level"], 2);
}

#[test]
fn eps_and_level_are_exclusive() {
    let out = amoeba(&["cres", "-f", "z1+1", "-k", "1", "--eps", "1/2"]);
    assert!(!out.status.success());
    let out = amoeba(&["cres", "-f", "z1+z2", "--eps", "1/2", "--max-terms", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn amoeba_csv_schema() {
    let out = stdout(&[
        "amoeba", "-f", "z1+z2+1", "--kmax", "2", "--box", "-2", "2", "--step", "1/2",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("w1,w2,bit,level,order1,order2"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 81);
    for r in &rows {
        assert_eq!(r.len(), 6);
        r[0].parse::<f64>().unwrap();
        r[1].parse::<f64>().unwrap();
        match r[2] {
            "1" => assert!(r[3..].iter().all(|s| s.is_empty())),
            "0" => assert!(r[3..].iter().all(|s| s.parse::<i64>().is_ok())),
            other => panic!("bit {other}"),
        }
    }
}

#[test]
fn amoeba_json_lines_match_level_zero_test() {
    let out = stdout(&[
        "amoeba", "-f", "z1+z2+1", "--kmax", "0", "--box", "-2", "2", "--step", "1/4", "--format",
        "json",
    ]);
    let f = parse("z1+z2+1", 2).unwrap();
    let mut count = 0;
    for line in out.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(|s| s.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["inAmoeba", "level", "order", "point"]);
        let w: Vec<f64> = v["point"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        let cert = is_lopsided(&f, &amoeba::LogPoint::from_f64(&w).unwrap()).unwrap();
        assert_eq!(v["inAmoeba"].as_bool().unwrap(), !cert.lopsided);
        if cert.lopsided {
            assert_eq!(v["level"], 0);
            let order = order_from_certificate(&cert, 2, 0).unwrap();
            assert_eq!(v["order"], serde_json::json!(order.0));
        } else {
            assert!(v["level"].is_null() && v["order"].is_null());
        }
        count += 1;
    }
    assert_eq!(count, 17 * 17);
}

#[test]
fn amoeba_output_is_deterministic_across_thread_counts() {
    let args = [
        "amoeba",
        "-f",
        "z1^3+z2^3+2*z1*z2+1",
        "--kmax",
        "3",
        "--step",
        "1/10",
    ];
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_amoeba"))
            .args(args)
            .env("AMOEBA_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));

    let f = parse("z1^3+z2^3+2*z1*z2+1", 2).unwrap();
    let spec = GridSpec::new(
        BigRational::from_integer((-2).into()),
        BigRational::from_integer(2.into()),
        BigRational::new(1.into(), 10.into()),
        2,
    )
    .unwrap();
    let recs = approximate_amoeba(&f, &spec, 3, &GridOptions::default()).unwrap();
    assert_eq!(
        String::from_utf8(run("2")).unwrap().lines().count(),
        recs.len() + 1
    );
}

#[test]
fn amoeba_svg_scatter() {
    let path = tmp("scatter.svg");
    stdout(&[
        "amoeba",
        "-f",
        "z1^3+z2^3+2*z1*z2+1",
        "--kmax",
        "4",
        "--step",
        "1/10",
        "--format",
        "svg",
        "-o",
        path.to_str().unwrap(),
    ]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 41 * 41);
    assert!(svg.contains("#d62728"));
}

#[test]
fn semialg_json_schema() {
    let out = stdout(&["semialg", "-f", "z1+z2+1", "-k", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["level"], 1);
    let base = v["baseTerms"].as_array().unwrap();
    assert_eq!(base.len(), 6);
    for t in base {
        assert_eq!(t["exponent"].as_array().unwrap().len(), 2);
        t["sqMagnitude"]
            .as_str()
            .unwrap()
            .parse::<BigRational>()
            .unwrap();
    }
    let cands = v["candidates"].as_array().unwrap();
    let scaled: Vec<Value> = cands.iter().map(|c| c["scaledExponent"].clone()).collect();
    assert_eq!(
        scaled,
        [
            serde_json::json!([0, 0]),
            serde_json::json!([0, 4]),
            serde_json::json!([4, 0])
        ]
    );
    for c in cands {
        assert!(c["order"].is_array() && c["sqMagnitude"].is_string());
    }
}

#[test]
fn semialg_levels_overlay_and_text() {
    let out = stdout(&[
        "semialg",
        "-f",
        "z1^3+z2^3+2*z1*z2+1",
        "-k",
        "1,2,3",
        "--res",
        "128",
        "--format",
        "svg",
    ]);
    for color in ["blue", "darkgreen", "red"] {
        assert!(out.contains(&format!("stroke=\"{color}\"")), "{color}");
    }
    let text = stdout(&["semialg", "-f", "z1+z2+1", "-k", "1", "--format", "text"]);
    assert!(text.contains("x1^4 + 2*x1^2*x2^2 + x2^4 + 2*x1^2 + 2*x2^2 >= 1"));
    assert!(text.trim_end().ends_with("x1, x2 >= 0"));
    let arr: Value =
        serde_json::from_str(&stdout(&["semialg", "-f", "z1+z2+1", "-k", "1,2"])).unwrap();
    assert_eq!(arr.as_array().unwrap().len(), 2);
}

#[test]
fn semialg_monomial_raster_is_empty() {
    let out = amoeba(&[
        "semialg", "-f", "3*z1*z2", "-k", "1", "--res", "20", "--format", "ppm",
    ]);
    assert!(out.status.success());
    let header = b"P6\n20 20\n255\n";
    assert!(out.stdout.starts_with(header));
    assert!(out.stdout[header.len()..].iter().all(|&b| b == 255));
}

#[test]
fn bench_csv_and_exit_codes() {
    let out = stdout(&[
        "bench",
        "-f",
        "z1^3+z1*z2+z2^3+1",
        "-k",
        "1,2",
        "--runs",
        "2",
        "--format",
        "csv",
    ]);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[..3], ["polynomial", "level", "runs"]);
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][6], rows[0][7]), ("10", "12"));
    assert_eq!((rows[1][6], rows[1][7]), ("31", "48"));
    assert!(rows.iter().all(|r| r[10] == "true"));

    let failed = amoeba(&[
        "bench",
        "-f",
        "z1 - z1",
        "-n",
        "2",
        "-k",
        "1",
        "--no-baseline",
    ]);
    assert_eq!(failed.status.code(), Some(1));
    let table = String::from_utf8(failed.stdout).unwrap();
    assert!(table.contains("error:"));
}

#[test]
fn usage_errors() {
    assert_eq!(amoeba(&["cres", "-k", "1"]).status.code(), Some(2));
    assert_eq!(
        amoeba(&["cres", "-f", "z1 +", "-k", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        amoeba(&["amoeba", "-f", "z1+z2+1", "--step", "3/7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        amoeba(&["semialg", "-f", "z1+z2+1", "-k", "1", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}
