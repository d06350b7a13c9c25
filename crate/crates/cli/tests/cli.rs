use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn quiver(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../quivers").join(name)
}

fn kac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kac")).args(args).output().expect("binary runs")
}

fn kac_uncached(args: &[&str]) -> Output {
    let mut all = vec!["--no-cache"];
    all.extend_from_slice(args);
    kac(&all)
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn compute_examples() {
    let t = quiver("tennis-racket.quiver");
    assert_eq!(first_line(&kac_uncached(&["compute", t.to_str().unwrap(), "--dim", "1,1"])), "q");
    let k4 = quiver("K4.quiver");
    let out = kac_uncached(&["compute", k4.to_str().unwrap(), "--dim", "2,3", "--check"]);
    assert_eq!(
        first_line(&out),
        "2 + 4*q + 9*q^2 + 12*q^3 + 15*q^4 + 14*q^5 + 13*q^6 + 9*q^7 + 7*q^8 + 4*q^9 + 3*q^10 + q^11 + q^12"
    );
    let record: serde_json::Value = serde_json::from_str(stdout(&out).lines().nth(1).unwrap()).unwrap();
    assert_eq!(record["coefficients"].as_array().unwrap().len(), 13);
    let k1 = quiver("K1.quiver");
    assert_eq!(first_line(&kac_uncached(&["compute", k1.to_str().unwrap(), "--dim", "2,2"])), "0");
}

#[test]
fn both_paths_print_the_same_polynomial() {
    let s = quiver("S1.quiver");
    let a = stdout(&kac_uncached(&["compute", s.to_str().unwrap(), "--dim", "4"]));
    let b = stdout(&kac_uncached(&["compute", s.to_str().unwrap(), "--dim", "4", "--path", "plethystic"]));
    assert_eq!(a, b);
}

#[test]
fn param_limit_reciprocal_witt() {
    let s = quiver("S1.quiver");
    assert_eq!(
        first_line(&kac_uncached(&["param", s.to_str().unwrap(), "--dim", "2", "--vary", "loop"])),
        "[q^(-1 + 2*n_loop)*(-1) + q^(-1 + 4*n_loop)*(1)] / (-1 + q^2)"
    );
    let k1 = quiver("K1.quiver");
    let k1 = k1.to_str().unwrap();
    assert_eq!(
        first_line(&kac_uncached(&["limit", k1, "--dim", "2,2", "--vary", "arrow", "--order", "10"])),
        "1,3,5,9,12,18,22,30,35,45,51"
    );
    assert_eq!(
        first_line(&kac_uncached(&["reciprocal", k1, "--dim", "1,1", "--vary", "arrow"])),
        "1,1,1,1,1,1,1,1,1,1,1"
    );
    assert_eq!(first_line(&kac_uncached(&["witt", "--dim", "4,4"])), "8");
}

#[test]
fn json_limit_carries_the_rate() {
    let k1 = quiver("K1.quiver");
    let out = kac_uncached(&["--json", "limit", k1.to_str().unwrap(), "--dim", "2,2", "--vary", "arrow", "--order", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["limit"], serde_json::json!([1, 3, 5, 9]));
    assert_eq!(v["predicted_rate"]["constant"], serde_json::json!(-1));
    assert_eq!(v["predicted_rate"]["linear"]["arrow"], serde_json::json!(1));
}

#[test]
fn direction_is_required_on_loopy_quivers() {
    let t = quiver("tennis-racket.quiver");
    let t = t.to_str().unwrap();
    let out = kac_uncached(&["limit", t, "--dim", "1,1", "--vary", "alpha,beta"]);
    assert_eq!(out.status.code(), Some(3));
    let out = kac_uncached(&["limit", t, "--dim", "1,1", "--vary", "alpha,beta", "--direction", "1,1"]);
    assert!(out.status.success());
    let out = kac_uncached(&["limit", t, "--dim", "1,1", "--vary", "alpha,beta", "--assume-direction-free"]);
    assert!(out.status.success());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.quiver");
    std::fs::write(&bad, "{\n  \"vertices\": [\"1\"],\n  \"arrows\": [\n").unwrap();
    let out = kac_uncached(&["compute", bad.to_str().unwrap(), "--dim", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");

    let k1 = quiver("K1.quiver");
    let k1 = k1.to_str().unwrap();
    assert_eq!(kac_uncached(&["compute", k1, "--dim", "2"]).status.code(), Some(2));
    assert_eq!(kac_uncached(&["param", k1, "--dim", "1,1", "--vary", "nope"]).status.code(), Some(2));
    let out = kac_uncached(&["param", k1, "--dim", "4,4", "--vary", "arrow", "--term-cap", "10"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let k4 = quiver("K4.quiver");
    let args = ["--cache-dir", cache, "--json", "compute", k4.to_str().unwrap(), "--dim", "2,3"];
    let cold = kac(&args);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = kac(&args);
    assert_eq!(stdout(&cold), stdout(&warm));
    let fresh = kac_uncached(&args[2..]);
    assert_eq!(stdout(&cold), stdout(&fresh));
}

#[test]
fn renamed_files_share_cache_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let copy = dir.path().join("copy.quiver");
    std::fs::copy(quiver("S1.quiver"), &copy).unwrap();
    let cache = cache.to_str().unwrap();
    stdout(&kac(&["--cache-dir", cache, "compute", quiver("S1.quiver").to_str().unwrap(), "--dim", "3"]));
    stdout(&kac(&["--cache-dir", cache, "compute", copy.to_str().unwrap(), "--dim", "3"]));
    assert_eq!(std::fs::read_dir(cache).unwrap().count(), 1);
}

#[test]
fn distribution_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("k4.csv");
    let k4 = quiver("K4.quiver");
    let out = kac(&[
        "--cache-dir",
        dir.path().join("cache").to_str().unwrap(),
        "distribution",
        k4.to_str().unwrap(),
        "--dim",
        "2,3",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert!(text.contains("even: (0, 2/15) (1/6, 3/5) (1/3, 1) (1/2, 13/15) (2/3, 7/15) (5/6, 1/5) (1, 1/15)"));
    assert!(text.contains("odd: (1/12, 4/15) (1/4, 4/5) (5/12, 14/15) (7/12, 3/5) (3/4, 4/15) (11/12, 1/15)"));
    let rows = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = rows.lines().collect();
    assert_eq!(lines[0], "parity,x_num,x_den,y_num,y_den,x_float,y_float");
    assert_eq!(lines.len(), 1 + 7 + 6);
    assert!(lines[1].starts_with("even,0,1,2,15,"));
    assert!(lines[8].starts_with("odd,1,12,4,15,"));
    // csv runs never populate the cache
    assert!(!dir.path().join("cache").exists());
}

#[test]
fn valuation_and_counts() {
    let s = quiver("S1.quiver");
    let s = s.to_str().unwrap();
    let text = stdout(&kac_uncached(&["valuation", s, "--dim-box", "3", "--mult-box", "2"]));
    assert!(text.contains("agreement: 6/6 (support convention)"), "{text}");
    let text = stdout(&kac_uncached(&["counts", s, "--dim", "2", "--which", "i"]));
    assert_eq!(text, "(1): q\n(2): (1/2)*q + (1/2)*q^2\n");
    let text = stdout(&kac_uncached(&["counts", s, "--dim", "2", "--which", "m"]));
    assert_eq!(text, "(1): q\n(2): q + q^2\n");
}
