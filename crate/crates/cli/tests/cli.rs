use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn mtk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtk")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mtk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn k0_classes() {
    assert_eq!(stdout(&["k0", &data("line.pp")]), "X\n");
    assert_eq!(stdout(&["k0", &data("axes.pp")]), "2X - 1\n");
    assert_eq!(stdout(&["k0", &data("off_diagonal.pp")]), "X^2 - X\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "k0", &data("axes.pp")])).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!([-1, 2]));
}

#[test]
fn iso_dim_count() {
    assert_eq!(stdout(&["iso", &data("axes.pp"), &data("shifted_axes.pp")]), "isomorphic\n");
    assert_eq!(stdout(&["iso", &data("axes.pp"), &data("line.pp")]), "not-isomorphic\n");
    assert_eq!(stdout(&["dim", &data("line.pp")]), "1\n");
    assert_eq!(stdout(&["count", "--prime", "5", &data("axes.pp")]), "9 points over F_5 (good prime: yes)\n");
}

#[test]
fn formula_errors_point_at_the_source() {
    let out = mtk(&["k0", &data("bad_range.pp")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad_range.pp:2:9"), "{err}");
    assert_eq!(mtk(&["k0", &data("nonlinear.pp")]).status.code(), Some(1));
    assert_eq!(mtk(&["k0", &data("missing.pp")]).status.code(), Some(1));
}

#[test]
fn automorphisms() {
    assert_eq!(stdout(&["aut", "validate", &data("swap.json")]), "valid\n");
    assert_eq!(stdout(&["aut", "dim", &data("swap.json")]), "0\n");
    assert_eq!(stdout(&["aut", "dim", &data("shear.json")]), "2\n");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "aut", "decompose", &data("shear.json")])).unwrap();
    assert_eq!(v["affine"]["offset"], serde_json::json!(["1/2", 0]));
    assert_eq!(v["remainder_dim"], serde_json::json!(1));
    assert_eq!(mtk(&["aut", "validate", &data("collapse.json")]).status.code(), Some(1));
}

#[test]
fn k1_over_f4() {
    let out = stdout(&["k1", "--ring", "fq:4"]);
    assert!(out.contains("Z_2 ⊕ ⊕_{n≥1} (Z_3 ⊕ Z_2)"), "{out}");
    assert_eq!(stdout(&["k1-alg", "--ring", "fq:4"]), "Z_3\n");
    assert_eq!(stdout(&["omega-ab", "--ring", "fq:5", "--n", "3"]), "(Z_2)^6 ⊕ (Z_4)^3\n");
}

#[test]
fn k1_rejections() {
    let out = mtk(&["k1", "--ring", "fq:2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("F_2"));
    let out = mtk(&["k1", "--ring", "z", "--module", "free:2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = mtk(&["k1", "--ring", "pid:U"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn flags_can_be_given() {
    let closed = stdout(&["k1", "--ring", "ed:U:unit-sum", "--t-closed"]);
    assert!(closed.contains("(U ⊕ Z_2)"), "{closed}");
    assert_eq!(mtk(&["k1", "--ring", "ed:U:unit-sum"]).status.code(), Some(1));
    assert_eq!(mtk(&["k1", "--ring", "fq:3", "--t-closed", "--cofinal-even", "true"]).status.code(), Some(2));
}

#[test]
fn verify_and_abelianize() {
    let out = stdout(&["verify", "--suite", "semiab", "--seed", "7"]);
    assert!(out.contains("30/30"), "{out}");
    assert_eq!(stdout(&["abelianize", "--group", "sym:4"]), "Sym(4) of order 24: abelianization [2]\n");
    assert_eq!(mtk(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(mtk(&["abelianize", "--group", "nope:3"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mtk(&[]).status.code(), Some(2));
    assert_eq!(mtk(&["k1"]).status.code(), Some(2));
    assert_eq!(mtk(&["count", &data("line.pp")]).status.code(), Some(2));
}

#[test]
fn output_is_stable() {
    let args = ["--json", "verify", "--suite", "k0", "--cases", "8", "--seed", "3"];
    assert_eq!(stdout(&args), stdout(&args));
}
