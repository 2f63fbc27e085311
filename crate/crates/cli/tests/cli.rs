use std::path::PathBuf;
use std::process::Command;

use pseudoschur::pppt::pppt_dagger;
use pseudoschur::{matrix, Matrix};
use pseudoschur_cli::format::{parse_block, parse_matrix, print_matrix};
use pseudoschur_cli::{run, EXIT_MATH, EXIT_OK, EXIT_USAGE};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pseudoschur").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn binary(args: &[&str], seed_env: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pseudoschur"));
    cmd.args(args).env_remove("PSEUDOSCHUR_SEED");
    if let Some(s) = seed_env {
        cmd.env("PSEUDOSCHUR_SEED", s);
    }
    let o = cmd.output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn pinv_prints_canonical_rows() {
    let (code, out, _) = cli(&["pinv", &fixture("schur_a.txt")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "matrix 2 2\n-1/5 -1/5\n1/10 1/10\n");
}

#[test]
fn pinv_certificate_is_appended_as_comments() {
    let (code, out, _) = cli(&["pinv", "--certify", &fixture("absorbing_a.txt")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("# eq1=true eq2=true eq3=true eq4=true\n"), "{out}");
    // Still a valid matrix file.
    parse_matrix(&out).unwrap();
}

#[test]
fn ginv_of_a_matrix_with_square_minus_itself() {
    // A² = −A, so A# = A.
    let (code, out, _) = cli(&["ginv", "--certify", &fixture("schur_a.txt")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "matrix 2 2\n-2 1\n-2 1\n# eq1=true eq2=true commute=true\n"
    );
}

#[test]
fn missing_group_inverse_is_a_precondition_error() {
    let (code, out, err) = cli(&["ginv", &fixture("nilpotent.txt")]);
    assert_eq!(code, EXIT_MATH);
    assert!(out.is_empty());
    assert!(err.contains("no group inverse"), "{err}");
}

#[test]
fn parse_errors_name_the_line() {
    let (code, _, err) = cli(&["pinv", &fixture("truncated.txt")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("truncated.txt: line 3"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["pinv"]).0, EXIT_USAGE);
    assert_eq!(cli(&["schur", "--which", "Q", &fixture("schur_example.txt")]).0, EXIT_USAGE);
    assert_eq!(cli(&["pinv", "/nonexistent/file"]).0, EXIT_USAGE);
    let (code, _, err) = cli(&["verify", "--theorem", "Thm9.9"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown theorem"), "{err}");
    assert_eq!(cli(&["verify", "--theorem", "Thm4.1", "--max-dim", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
}

#[test]
fn schur_complements_of_the_vanishing_example() {
    let path = fixture("schur_example.txt");
    let (_, l, _) = cli(&["schur", "--which", "L", &path]);
    assert_eq!(l, "matrix 2 2\n-1 2\n-1 2\n");
    let (_, k, _) = cli(&["schur", "--which", "k", &path]);
    assert_eq!(k, "matrix 2 2\n0 0\n1 1\n");
    let (_, g, _) = cli(&["schur", "--which", "G", &path]);
    assert_eq!(parse_matrix(&g).unwrap(), Matrix::zeros(2, 2));
}

#[test]
fn pppt_matches_the_library() {
    let path = fixture("pivot_v.txt");
    let (code, out, _) = cli(&["pppt", "--pivot", "A", "--family", "mp", &path]);
    assert_eq!(code, EXIT_OK);
    let v = parse_block(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parse_block(&out).unwrap(), pppt_dagger(&v).transform);
    assert!(out.starts_with("block 2 1 2 1\n"));
}

#[test]
fn absorb_reports_both_sides() {
    let (code, out, _) = cli(&[
        "absorb",
        "--family",
        "mp",
        &fixture("absorbing_a.txt"),
        &fixture("absorbing_b.txt"),
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["law_holds"], true);
    assert_eq!(v["range_conditions_hold"], true);
}

#[test]
fn oracle_flags() {
    let x = std::env::temp_dir().join("pseudoschur-oracle-x.txt");
    std::fs::write(&x, print_matrix(&matrix![[1, 0], [0, 1]])).unwrap();
    let (code, out, _) = cli(&["oracle", "penrose", &fixture("nilpotent.txt"), x.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "eq1=false\neq2=false\neq3=false\neq4=false\n");
    let (_, out, _) = cli(&["oracle", "group", &fixture("nilpotent.txt"), x.to_str().unwrap()]);
    assert_eq!(out, "eq1=false\neq2=false\ncommute=true\n");

    // The transpose of this partial isometry is its Moore-Penrose inverse.
    std::fs::write(&x, print_matrix(&matrix![[0, 0], [1, 0]])).unwrap();
    let (_, out, _) = cli(&["oracle", "penrose", &fixture("nilpotent.txt"), x.to_str().unwrap()]);
    assert_eq!(out, "eq1=true\neq2=true\neq3=true\neq4=true\n");
}

#[test]
fn verify_single_theorem_exits_zero() {
    let (code, out, _) = cli(&["verify", "--theorem", "Thm4.1", "--trials", "200", "--seed", "7"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("Thm4.1: 201 trials, 201 passes, 0 vacuous, 0 failures"), "{out}");
}

#[test]
fn seed_comes_from_env_unless_flagged() {
    let args = ["verify", "--theorem", "Thm3.2", "--trials", "2", "--json"];
    let (_, out) = binary(&args, Some("9"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 9);

    let mut flagged = args.to_vec();
    flagged.extend(["--seed", "3"]);
    let (_, out) = binary(&flagged, Some("9"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 3);

    let (_, out) = binary(&args, None);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 0);
}

#[test]
fn timing_is_opt_in() {
    let base = ["verify", "--theorem", "Thm3.1", "--trials", "2", "--json"];
    let (_, plain, _) = cli(&base);
    assert!(!plain.contains("elapsed_ms"));
    let mut timed = base.to_vec();
    timed.push("--timing");
    let (_, out, _) = cli(&timed);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn json_report_fields() {
    let (_, out, _) = cli(&["verify", "--theorem", "Thm3.5", "--trials", "3", "--seed", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["theorem_id", "trials", "passes", "vacuous", "discards", "failures", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v.get("counterexample").is_none());
    let blocker = v["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == "converse-blocker")
        .unwrap();
    assert_eq!(blocker["as_expected"], true);
}
