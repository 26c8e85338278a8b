//! Runs the CLI in-process and compares stdout with files under
//! `tests/golden`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use cathom::cli::run;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root()
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["cathom".to_string()];
    argv.extend(args.iter().map(|a| match a.strip_prefix('@') {
        Some(name) => fixture(name),
        None => a.to_string(),
    }));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn golden(name: &str, args: &[&str], expected_code: i32) {
    let (code, out, err) = invoke(args);
    assert_eq!(code, expected_code, "exit code for {name}; stderr: {err}");
    let path = root().join("tests/golden").join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, expected, "stdout for {name}");
}

#[test]
fn validate() {
    golden(
        "validate_walking_arrow",
        &["validate", "@walking_arrow.json"],
        0,
    );
    golden("validate_bad_unit", &["validate", "@bad_unit.json"], 1);
    golden(
        "validate_idempotent_broken",
        &["validate", "@idempotent_broken.json"],
        1,
    );
}

#[test]
fn nerve() {
    golden(
        "nerve_walking_arrow",
        &["nerve", "@walking_arrow.json", "--max-dim", "3", "--list"],
        0,
    );
    golden("nerve_z2", &["nerve", "@z2.json", "--max-dim", "4"], 0);
}

#[test]
fn chain() {
    golden(
        "chain_walking_arrow",
        &["chain", "@walking_arrow.json", "--max-dim", "2"],
        0,
    );
    golden(
        "chain_z2_normalized",
        &["chain", "@z2.json", "--max-dim", "3", "--normalized"],
        0,
    );
}

#[test]
fn homology() {
    golden(
        "homology_walking_arrow",
        &["homology", "@walking_arrow.json", "--max-dim", "4"],
        0,
    );
    golden(
        "homology_square",
        &["homology", "@square.json", "--max-dim", "4"],
        0,
    );
    golden(
        "homology_discrete3",
        &[
            "homology",
            "@discrete3.json",
            "--max-dim",
            "4",
            "--normalized",
        ],
        0,
    );
    golden(
        "homology_z2",
        &["homology", "@z2.json", "--max-dim", "5", "--normalized"],
        0,
    );
}

#[test]
fn coskeletal() {
    golden(
        "coskeletal_square",
        &["coskeletal", "@square.json", "--max-dim", "3"],
        0,
    );
    golden(
        "coskeletal_z2",
        &["coskeletal", "@z2.json", "--max-dim", "4"],
        0,
    );
}

#[test]
fn two_vector_spaces() {
    golden(
        "diamond_plane",
        &[
            "diamond",
            "@plane_arrows.json",
            "--f",
            "(0,0,1,0)",
            "--g",
            "(1,0,0,1)",
        ],
        0,
    );
    golden("solve_comp_plane", &["solve-comp", "@plane_arrows.json"], 0);
    golden("solve_comp_line", &["solve-comp", "@line.json"], 0);
}

#[test]
fn eckmann_hilton() {
    golden("eh_z3", &["eh-check", "@z3_add.json"], 0);
    golden("eh_xor", &["eh-check", "@xor.json"], 0);
    golden(
        "eh_left_absorbing",
        &["eh-check", "@left_absorbing.json"],
        1,
    );
    golden(
        "eh_exhaustive_2",
        &["eh-check", "--exhaustive-size", "2"],
        0,
    );
    golden(
        "eh_sampled_4",
        &[
            "eh-check",
            "--exhaustive-size",
            "4",
            "--seed",
            "7",
            "--samples",
            "500",
        ],
        0,
    );
}

#[test]
fn homotopy() {
    golden(
        "homotopy_square",
        &[
            "homotopy",
            "@walking_arrow.json",
            "@square.json",
            "@arrow_top.json",
            "@arrow_bottom.json",
            "@square_alpha.json",
            "--max-dim",
            "3",
        ],
        0,
    );
}

#[test]
fn failures_go_to_stderr() {
    let (code, out, err) = invoke(&[
        "diamond",
        "@plane_arrows.json",
        "--f",
        "(0,0,1,0)",
        "--g",
        "(0,0,1,0)",
    ]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.starts_with("error: not composable"));

    let (code, out, err) = invoke(&["solve-comp", "@not_reflexive.json"]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.contains("t·i"));

    let (code, _, err) = invoke(&[
        "homotopy",
        "@walking_arrow.json",
        "@square.json",
        "@arrow_top.json",
        "@arrow_bottom.json",
        "@square_alpha_bad.json",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("does not run F(x) → G(x)"));

    let (code, _, err) = invoke(&["homology", "@xor.json"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "));

    let (code, _, _) = invoke(&["nerve", "@missing.json"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["homology", "@square.json", "--max-dim", "4", "--normalized"];
    assert_eq!(invoke(&args), invoke(&args));
    let args = [
        "eh-check",
        "--exhaustive-size",
        "5",
        "--seed",
        "3",
        "--samples",
        "200",
    ];
    assert_eq!(invoke(&args), invoke(&args));
}
