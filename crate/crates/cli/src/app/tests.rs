use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use planestat::bigfloat::parse_decimal_ratio;

use super::*;
use crate::report::split_meta;

fn invoke(args: &[&str]) -> (u8, String) {
    let mut buf = Vec::new();
    let argv = std::iter::once("planestat").chain(args.iter().copied()).chain(["--quiet"]);
    let code = run(argv, &mut buf);
    (code, String::from_utf8(buf).expect("utf-8"))
}

fn code(args: &[&str]) -> u8 {
    invoke(args).0
}

fn stdout(args: &[&str]) -> String {
    let (code, out) = invoke(args);
    assert_eq!(code, EXIT_OK, "{args:?}");
    out
}

type Table = Vec<BTreeMap<String, String>>;

fn parse_csv(text: &str) -> (BTreeMap<String, String>, Table) {
    let mut header = BTreeMap::new();
    let mut body = String::new();
    for line in text.lines() {
        match line.strip_prefix("# ") {
            Some(kv) => {
                if let Some((k, v)) = kv.split_once('=') {
                    header.insert(k.to_string(), v.to_string());
                }
            }
            None => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let cols: Vec<String> = rdr.headers().expect("header").iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| {
            let r = r.expect("record");
            cols.iter().cloned().zip(r.iter().map(String::from)).collect()
        })
        .collect();
    (header, rows)
}

fn column(rows: &Table, name: &str) -> Vec<String> {
    rows.iter().map(|r| r[name].clone()).collect()
}

/// Value of one unit in the last place of a `d.ddd…e±x` decimal.
fn ulp(s: &str) -> BigRational {
    let (mantissa, exp) = s.split_once('e').expect("scientific notation");
    let frac_digits = mantissa.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let exp: i32 = exp.parse().expect("exponent");
    let p = exp - frac_digits;
    let ten = BigInt::from(10);
    if p >= 0 {
        BigRational::from_integer(num_traits::pow(ten, p as usize))
    } else {
        BigRational::new(BigInt::from(1), num_traits::pow(ten, (-p) as usize))
    }
}

fn check_ratio(num: &str, den: &str, ratio: &str) {
    let q = parse_decimal_ratio(num).unwrap() / parse_decimal_ratio(den).unwrap();
    let r = parse_decimal_ratio(ratio).unwrap();
    assert!((q - r).abs() <= ulp(ratio), "{num} / {den} vs {ratio}");
}

#[test]
fn count_matches_known_values() {
    let (_, rows) = parse_csv(&stdout(&["count", "--n-grid", "1,2,3,4,5,6"]));
    assert_eq!(column(&rows, "exact"), ["1", "3", "6", "13", "24", "48"]);
}

#[test]
fn ratio_columns_redivide_from_emitted_decimals() {
    let (_, rows) = parse_csv(&stdout(&["count", "--n-grid", "10,200,1500"]));
    for r in &rows {
        check_ratio(&r["exact_decimal"], &r["wright"], &r["ratio_wright"]);
        check_ratio(&r["exact_decimal"], &r["hayman"], &r["ratio_hayman"]);
    }
    let (_, rows) = parse_csv(&stdout(&["stat", "--statistic", "dimension", "--n-grid", "3,40"]));
    for r in &rows {
        check_ratio(&r["exact_decimal"], &r["saddle"], &r["ratio_saddle"]);
        check_ratio(&r["exact_decimal"], &r["asymptotic"], &r["ratio_asymptotic"]);
    }
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let args = ["stat", "--statistic", "trace", "--n-grid", "7,30"];
    let (header, rows) = parse_csv(&stdout(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json_args)).unwrap();
    let json_rows = v["rows"].as_array().unwrap();
    assert_eq!(json_rows.len(), rows.len());
    for (c, j) in rows.iter().zip(json_rows) {
        for (k, val) in c {
            if k == "meta" {
                let meta = split_meta(val);
                let jm: BTreeMap<String, String> = serde_json::from_value(j["meta"].clone()).unwrap();
                assert_eq!(meta, jm);
            } else {
                assert_eq!(j[k].as_str().unwrap_or(""), val, "column {k}");
            }
        }
    }
    for (k, val) in v["config"].as_object().unwrap().iter().chain(v["meta"].as_object().unwrap()) {
        assert_eq!(header.get(k).map(String::as_str), val.as_str(), "header {k}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["count", "--n-grid", "50,5", "--precision", "40"];
    assert_eq!(stdout(&args), stdout(&args));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("probe.json");
    let p = path.to_str().unwrap();
    let args = ["probe", "--n", "200", "--grid-size", "16", "--format", "json", "--out", p];
    assert!(stdout(&args).is_empty());
    let first = std::fs::read(&path).unwrap();
    stdout(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
}

#[test]
fn grid_is_sorted_and_deduplicated() {
    let (header, rows) = parse_csv(&stdout(&["count", "--n-grid", "9,3,9"]));
    assert_eq!(header["n_grid"], "3,9");
    assert_eq!(column(&rows, "n"), ["3", "9"]);
}

#[test]
fn small_trace_mean_is_exact() {
    let (header, rows) = parse_csv(&stdout(&["stat", "--statistic", "trace", "--n-grid", "2"]));
    assert_eq!(header["statistic"], "trace");
    assert_eq!(rows[0]["exact"], "4/3");
}

#[test]
fn saddle_value_beats_power_law_for_the_mean_trace() {
    let (_, rows) = parse_csv(&stdout(&["stat", "--statistic", "trace", "--n-grid", "1000"]));
    let dev = |s: &str| (parse_decimal_ratio(s).unwrap() - BigRational::from_integer(1.into())).abs();
    assert!(dev(&rows[0]["ratio_saddle"]) < dev(&rows[0]["ratio_asymptotic"]));
}

#[test]
fn dimension_at_one_has_no_power_law_value() {
    let (_, rows) = parse_csv(&stdout(&["stat", "--statistic", "dimension", "--n-grid", "1"]));
    assert_eq!(rows[0]["exact"], "1");
    assert_eq!(rows[0]["asymptotic"], "");
    assert_eq!(rows[0]["ratio_asymptotic"], "");
}

#[test]
fn oracle_and_selftest_pass() {
    let (header, rows) = parse_csv(&stdout(&["oracle", "--n", "5"]));
    assert_eq!(header["count"], "24");
    assert_eq!(rows.len(), 5);
    assert!(header.iter().filter(|(k, _)| k.starts_with("check_")).all(|(_, v)| v == "PASS"));
    let (header, rows) = parse_csv(&stdout(&["selftest"]));
    assert_eq!(header["result"], "PASS");
    assert_eq!(rows.len(), 12);
}

#[test]
fn probe_starts_at_the_real_axis() {
    let (header, rows) = parse_csv(&stdout(&["probe", "--n", "1000", "--grid-size", "16"]));
    assert_eq!(rows.len(), 32);
    assert_eq!(rows[0]["region"], "inside");
    assert_eq!(rows[0]["theta"], "0");
    assert_eq!(parse_decimal_ratio(&rows[0]["modulus_ratio"]).unwrap(), BigRational::from_integer(1.into()));
    let delta = parse_decimal_ratio(&header["delta"]).unwrap();
    assert!(delta > BigRational::zero());
    assert_eq!(parse_decimal_ratio(&rows[15]["theta"]).unwrap(), delta);
    assert_eq!(rows[16]["region"], "outside");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--version"]), EXIT_OK);
    assert!(stdout(&["--version"]).starts_with("planestat "));
    assert_eq!(code(&["count"]), EXIT_USAGE);
    assert_eq!(code(&["count", "--n-grid", "5", "--precision", "20"]), EXIT_USAGE);
    assert_eq!(code(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(code(&["oracle", "--n", "21"]), EXIT_COMPUTATION);
    assert_eq!(code(&["count", "--n-grid", "0"]), EXIT_COMPUTATION);
    assert_eq!(code(&["count", "--n-grid", "11", "--max-n", "10"]), EXIT_COMPUTATION);
    assert_eq!(code(&["probe", "--n", "5"]), EXIT_COMPUTATION);
    assert_eq!(code(&["count", "--n-grid", "3", "--out", "/nonexistent/dir/x.csv"]), EXIT_COMPUTATION);
}
