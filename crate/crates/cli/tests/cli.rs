use std::path::Path;
use std::process::{Command, Output};

fn lzeros(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lzeros"));
    cmd.args(args).env_remove("LZEROS_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("LZEROS_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// `(index, t)` pairs from the golden zero file.
fn golden_zeros() -> Vec<(i64, f64)> {
    let mut rd = csv::ReaderBuilder::new().delimiter(b'\t').from_path(fixture("s8f_zeros.tsv")).unwrap();
    rd.records().map(|r| r.unwrap()).map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap())).collect()
}

#[test]
fn eval_last_level_to_24_digits() {
    let o = lzeros(&["eval", "s8f", "--t", "100", "--N", "10000", "--l", "35", "--format", "json"], None);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last = rows.as_array().unwrap().last().unwrap();
    assert_eq!(last["level"], 35);
    let re = last["re"].as_str().unwrap();
    assert!(re.starts_with("-1.78364282715441601816901"), "{re}");
    let im: f64 = last["im"].as_str().unwrap().parse().unwrap();
    assert!(im.abs() < 3e-25);
}

#[test]
fn scan_matches_golden_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zeros.tsv");
    let o = lzeros(&["scan", "s8f", "--to", "100", "--digits", "40", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::ReaderBuilder::new().delimiter(b'\t').from_path(&out).unwrap();
    let got: Vec<(i64, f64)> = rd.records().map(|r| r.unwrap()).map(|r| (r[0].parse().unwrap(), r[2].parse().unwrap())).collect();
    let want = golden_zeros();
    assert_eq!(got.len(), want.len());
    for ((i, t), (j, u)) in got.iter().zip(&want) {
        assert_eq!(i, j);
        // the golden values are cut, not rounded, after ten decimals
        assert!((t - u).abs() < 1.5e-10, "zero {i}: {t} vs {u}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "s8f", "--from", "5", "--to", "30", "--digits", "30", "--format", "json"];
    let a = stdout(&lzeros(&args, None));
    let b = stdout(&lzeros(&args, None));
    assert_eq!(a, b);
}

#[test]
fn coefficient_file_and_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    stdout(&lzeros(&["coeffs", "s8f", "10000", "--out", path.to_str().unwrap()], None));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10000);
    assert_eq!((lines[0], lines[1]), ("1", "-8"));
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("f.txt.json")).unwrap()).unwrap();
    assert_eq!(side["kind"], "integer");

    // populated by `coeffs`, then read back by `eval`
    let cache = dir.path().join("cache");
    for spec in [&["hecke", "--d", "2", "--n", "1", "--m", "0"][..], &["sym3"][..]] {
        let mut gen = vec!["coeffs"];
        gen.extend_from_slice(spec);
        gen.extend_from_slice(&["3000", "--digits", "30"]);
        stdout(&lzeros(&gen, Some(&cache)));
        let mut ev = vec!["eval"];
        ev.extend_from_slice(spec);
        ev.extend_from_slice(&["--t", "15", "--N", "3000", "--l", "8", "--digits", "30"]);
        assert_eq!(stdout(&lzeros(&ev, Some(&cache))), stdout(&lzeros(&ev, None)), "{spec:?}");
    }
    let hecke = std::fs::read_to_string(cache.join("hecke_2_1_0-3000.txt")).unwrap();
    assert_eq!(hecke.lines().next().unwrap().split_whitespace().count(), 2);
}

#[test]
fn explicit_with_golden_zeros() {
    let fx = fixture("s8f_zeros.tsv");
    let o = lzeros(&["explicit", "--from", "1.1", "--to", "20", "--zeros", "69", "--zeros-file", fx.to_str().unwrap()], None);
    let text = stdout(&o);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rd.headers().unwrap(), vec!["x", "prime_side", "zero_side", "difference"]);
    let rows: Vec<Vec<f64>> = rd.records().map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    // each prime power contributes a left, middle and right row
    let mut jumps: Vec<f64> = rows.iter().map(|r| r[0]).filter(|x| x.fract() == 0.0 && *x > 1.1 && *x < 20.0).collect();
    jumps.dedup();
    assert_eq!(jumps, vec![2.0, 3.0, 4.0, 5.0, 7.0, 8.0, 9.0, 11.0, 13.0, 16.0, 17.0, 19.0]);
    let stderr = String::from_utf8_lossy(&o.stderr);
    let worst: f64 = stderr.split("midpoints = ").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!(worst < 0.25, "{stderr}");
}

#[test]
fn exit_codes() {
    let bad = lzeros(&["eval", "s8f", "--t", "1", "--digits", "10"], None);
    assert_eq!(bad.status.code(), Some(1));
    let bad = lzeros(&["eval", "nonesuch", "--t", "1"], None);
    assert_eq!(bad.status.code(), Some(1));
    let ok = lzeros(&["count", "s8f", "--to", "30", "--digits", "30"], None);
    assert_eq!(ok.status.code(), Some(0));
    // far too few coefficients: the argument cannot be tracked to an integer
    let rough = lzeros(&["count", "s8f", "--to", "30", "--digits", "30", "--N", "40", "--l", "2"], None);
    assert_eq!(rough.status.code(), Some(3), "{}", String::from_utf8_lossy(&rough.stdout));
}
