//! Command-line contract: exit codes, byte-identical reruns, file formats,
//! and the filling modes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quiver-verify"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qv-cli-{name}"));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().unwrap()
}

const EXAMPLE_RANKS: &str = r#"{"n": 3, "rows": [[1,4,3,3],[1,2,2],[1,1],[0]]}"#;

#[test]
fn coeffs_exit_codes() {
    let dir = workdir("codes");
    let ranks = write(&dir, "ranks.json", EXAMPLE_RANKS);
    let ranks = ranks.to_str().unwrap();

    let ok = run(&["coeffs", "--rank-file", ranks, "--path", "HHH"]);
    assert_eq!(ok.status.code(), Some(0));

    // Malformed triangle: r01 exceeds both neighbors.
    let bad = write(&dir, "bad.json", r#"{"n": 1, "rows": [[1,1],[2]]}"#);
    let out = run(&["coeffs", "--rank-file", bad.to_str().unwrap(), "--path", "H"]);
    assert_eq!(out.status.code(), Some(2));

    // Wrong row shape is also exit 2.
    let short = write(&dir, "short.json", r#"{"n": 3, "rows": [[1,4,3,3],[1,2,2]]}"#);
    let out = run(&["coeffs", "--rank-file", short.to_str().unwrap(), "--path", "HHH"]);
    assert_eq!(out.status.code(), Some(2));

    // Bad path word and path that leaves the diagram: exit 3.
    let out = run(&["coeffs", "--rank-file", ranks, "--path", "HHQ"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["coeffs", "--rank-file", ranks, "--path", "UHH"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["coeffs", "--rank-file", ranks, "--path", "HH"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn involution_exit_codes() {
    let dir = workdir("involution");
    // A pair that fits together: exit 4.
    let fitting = write(&dir, "fit.json", r#"{"q": [[3,4]], "p": [[1,1,2]], "a": 1}"#);
    let out = run(&["involution", "--pair-file", fitting.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fits together"));

    // A pair whose straightening vanishes: exit 4.
    let zero = write(&dir, "zero.json", r#"{"q": [[2]], "p": [], "a": 1}"#);
    let out = run(&["involution", "--pair-file", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("S vanishes"));

    // p taller than a: exit 4.
    let tall = write(&dir, "tall.json", r#"{"q": [[9]], "p": [[1,1],[2,2]], "a": 1}"#);
    let out = run(&["involution", "--pair-file", tall.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = workdir("determinism");
    let ranks = write(&dir, "ranks.json", EXAMPLE_RANKS);
    let ranks = ranks.to_str().unwrap();
    for args in [
        vec!["coeffs", "--rank-file", ranks, "--path", "HHH"],
        vec!["factor-seqs", "--rank-file", ranks, "--path", "HHH"],
        vec!["factor-seqs", "--rank-file", ranks, "--path", "HHH", "--filling", "random", "--seed", "9"],
        vec!["verify-conj1", "--rank-file", ranks, "--path", "DUHH"],
        vec!["fuzz-conj2", "--trials", "300", "--max-rows", "4", "--max-dim", "2", "--seed", "5"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn rect_file_and_rank_file_agree() {
    let dir = workdir("rect");
    let ranks = write(&dir, "ranks.json", EXAMPLE_RANKS);
    let rects = write(
        &dir,
        "rects.json",
        r#"{"n":3,"rects":{"0,1":{"rows":3,"cols":0},"0,2":{"rows":1,"cols":0},"0,3":{"rows":1,"cols":1},"1,2":{"rows":1,"cols":2},"1,3":{"rows":1,"cols":1},"2,3":{"rows":1,"cols":1}}}"#,
    );
    let from_ranks = run(&["coeffs", "--rank-file", ranks.to_str().unwrap(), "--path", "HHH"]);
    let from_rects = run(&["coeffs", "--rect-file", rects.to_str().unwrap(), "--path", "HHH"]);
    assert_eq!(from_ranks.stdout, from_rects.stdout);

    // A diagram violating the monotonicity relations is rejected.
    let bad = write(
        &dir,
        "bad-rects.json",
        r#"{"n":2,"rects":{"0,1":{"rows":0,"cols":0},"0,2":{"rows":1,"cols":1},"1,2":{"rows":0,"cols":0}}}"#,
    );
    let out = run(&["coeffs", "--rect-file", bad.to_str().unwrap(), "--path", "HH"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn filling_file_mode() {
    let dir = workdir("filling");
    let ranks = write(&dir, "ranks.json", EXAMPLE_RANKS);
    let ranks = ranks.to_str().unwrap();
    // The canonical filling of the worked example, as a filling file.
    let fill = write(
        &dir,
        "fill.json",
        r#"{"n":3,"fill":{
            "0,1":{"a":3,"b":0,"body":[]},
            "0,2":{"a":1,"b":0,"body":[]},
            "0,3":{"a":1,"b":1,"body":[[3]]},
            "1,2":{"a":1,"b":2,"body":[[1,1]]},
            "1,3":{"a":1,"b":1,"body":[[2]]},
            "2,3":{"a":1,"b":1,"body":[[1]]}}}"#,
    );
    let via_file = run(&[
        "factor-seqs",
        "--rank-file",
        ranks,
        "--path",
        "HHH",
        "--filling",
        &format!("file:{}", fill.to_str().unwrap()),
    ]);
    assert_eq!(via_file.status.code(), Some(0));
    let canonical = run(&["factor-seqs", "--rank-file", ranks, "--path", "HHH"]);
    // Same sequences and census; only the echoed filling mode differs.
    let a: serde_json::Value = serde_json::from_slice(&via_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&canonical.stdout).unwrap();
    assert_eq!(a["sequences"], b["sequences"]);
    assert_eq!(a["census"], b["census"]);

    // A filling breaking the cone condition is rejected.
    let broken = write(
        &dir,
        "broken.json",
        r#"{"n":3,"fill":{
            "0,1":{"a":3,"b":0,"body":[]},
            "0,2":{"a":1,"b":0,"body":[]},
            "0,3":{"a":1,"b":1,"body":[[2]]},
            "1,2":{"a":1,"b":2,"body":[[1,1]]},
            "1,3":{"a":1,"b":1,"body":[[2]]},
            "2,3":{"a":1,"b":1,"body":[[1]]}}}"#,
    );
    let out = run(&[
        "factor-seqs",
        "--rank-file",
        ranks,
        "--path",
        "HHH",
        "--filling",
        &format!("file:{}", broken.to_str().unwrap()),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_conj1_reports_match() {
    let dir = workdir("conj1");
    let ranks = write(&dir, "ranks.json", EXAMPLE_RANKS);
    let out = run(&["verify-conj1", "--rank-file", ranks.to_str().unwrap(), "--path", "HHH"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["match"], serde_json::json!(true));
    assert_eq!(report["coefficients"].as_array().unwrap().len(), 6);
    assert_eq!(report["census"].as_array().unwrap().len(), 6);
    assert_eq!(report["discrepancies"].as_array().unwrap().len(), 0);

    // Random filling must agree too.
    let out = run(&[
        "verify-conj1",
        "--rank-file",
        ranks.to_str().unwrap(),
        "--path",
        "HHH",
        "--filling",
        "random",
        "--seed",
        "31",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // All-empty diagram: single empty term.
    let empty = write(&dir, "empty.json", r#"{"n": 2, "rows": [[1,1,1],[1,1],[1]]}"#);
    let out = run(&["verify-conj1", "--rank-file", empty.to_str().unwrap(), "--path", "HH"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["coefficients"].as_array().unwrap().len(), 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = workdir("outflag");
    let ranks = write(&dir, "ranks.json", EXAMPLE_RANKS);
    let target = dir.join("coeffs.json");
    let out = run(&[
        "coeffs",
        "--rank-file",
        ranks.to_str().unwrap(),
        "--path",
        "HHH",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = run(&["coeffs", "--rank-file", ranks.to_str().unwrap(), "--path", "HHH"]);
    assert_eq!(fs::read(&target).unwrap(), direct.stdout);
}

#[test]
fn fuzz_zero_dims_all_skip() {
    let out = run(&["fuzz-conj2", "--trials", "60", "--max-rows", "3", "--max-dim", "0", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["skipped"], serde_json::json!(60));
    assert_eq!(summary["ok"], serde_json::json!(0));
}

#[test]
fn fuzz_single_trial_replays_recorded_seed() {
    let run1 = run(&["fuzz-conj2", "--trials", "40", "--max-rows", "5", "--max-dim", "2", "--seed", "77"]);
    let text = String::from_utf8(run1.stdout).unwrap();
    let line = text.lines().nth(17).unwrap();
    let report: serde_json::Value = serde_json::from_str(line).unwrap();
    let seed = report["seed"].as_u64().unwrap().to_string();
    let replay = run(&["fuzz-conj2", "--trials", "1", "--max-rows", "5", "--max-dim", "2", "--seed", &seed]);
    let replay_text = String::from_utf8(replay.stdout).unwrap();
    assert_eq!(replay_text.lines().next().unwrap(), line);
}
