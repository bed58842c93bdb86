//! End-to-end behaviour of the `edlab` commands and their exit codes.

use std::path::Path;
use std::process::Command;

use edlab_cli::verify::random_model;
use edlab_cli::{parse_config, run};
use edlab_core::qalg::Rng;

fn edlab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("edlab").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn value<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{stdout}"))
}

#[test]
fn binary_help_exits_zero() {
    let out = Command::new(env!("CARGO_BIN_EXE_edlab"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for cmd in ["report", "sweep", "frontier", "verify"] {
        assert!(text.contains(cmd), "{text}");
    }
}

#[test]
fn binary_propagates_failure_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_edlab"))
        .args(["verify", "--trials", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(edlab(&["verify", "--trials", "0"]).0, 1);
    assert_eq!(edlab(&["nonsense"]).0, 1);
    assert_eq!(
        edlab(&["frontier", "--cab", "1", "--da", "0.5", "--db", "0.5", "--out", "x.csv"]).0,
        1
    );
}

#[test]
fn missing_config_exits_three() {
    let (code, _, err) = edlab(&["report", "--config", "/nonexistent/edlab.cfg"]);
    assert_eq!(code, 3);
    assert!(err.contains("/nonexistent/edlab.cfg"), "{err}");
}

#[test]
fn malformed_config_exits_one_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.cfg", "scenario=fig2\nbogus=1\n");
    let (code, _, err) = edlab(&["report", "--config", &path]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn report_fig2_at_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "fig2.cfg",
        "scenario=fig2\ntheta=0\nwitness.kind=optimal\n",
    );
    let (code, out, _) = edlab(&["report", "--config", &path]);
    assert_eq!(code, 0);
    let num = |k| value(&out, k).parse::<f64>().unwrap();
    assert!((num("epsilon_a") - 2f64.sqrt()).abs() < 1e-9);
    assert!((num("eta_b") - 2f64.sqrt()).abs() < 1e-9);
    assert!((num("c_ab") - 1.0).abs() < 1e-12);
    // Optimal witness: rhs = 3 + cos²2θ.
    assert!((num("thm1_rhs") - 4.0).abs() < 1e-9);
    assert!(!out.contains("VIOLATED"), "{out}");
}

#[test]
fn report_seed_override_changes_sampled_witness_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "fig1.cfg",
        "scenario=fig1\ntheta=0.3\nphi=0.7\nwitness.samples=20\n",
    );
    let (_, a, _) = edlab(&["report", "--config", &path, "--seed", "1"]);
    let (_, b, _) = edlab(&["report", "--config", &path, "--seed", "2"]);
    let (_, a2, _) = edlab(&["report", "--config", &path, "--seed", "1"]);
    assert_eq!(a, a2);
    assert_eq!(value(&a, "epsilon_a"), value(&b, "epsilon_a"));
    assert_ne!(
        value(&a, "thm1_witness_term"),
        value(&b, "thm1_witness_term")
    );
}

#[test]
fn sweep_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.cfg",
        "scenario=fig2\ntheta_count=4\nwitness.samples=10\n",
    );
    let out_path = dir.path().join("s.csv");
    let (code, out, _) = edlab(&[
        "sweep",
        "--config",
        &cfg,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "rows"), "4");
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with(
        "theta,epsilon_a,eta_b,c_ab,ozawa_lhs,branciard_tight_lhs,thm1_rhs,l_new2,new_beats_branciard"
    ));
}

#[test]
fn sweep_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.cfg",
        "scenario=fig3\ntheta_count=32\nwitness.samples=25\nseed=9\n",
    );
    let run_once = |name: &str| {
        let p = dir.path().join(name);
        assert_eq!(
            edlab(&["sweep", "--config", &cfg, "--out", p.to_str().unwrap()]).0,
            0
        );
        std::fs::read(p).unwrap()
    };
    assert_eq!(run_once("a.csv"), run_once("b.csv"));
}

#[test]
fn sweep_uses_configured_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from_config.csv");
    let cfg = write(
        dir.path(),
        "s.cfg",
        &format!(
            "scenario=fig1\ntheta_count=3\nwitness.samples=5\noutput_path={}\n",
            target.display()
        ),
    );
    assert_eq!(edlab(&["sweep", "--config", &cfg]).0, 0);
    assert!(target.exists());
}

#[test]
fn sweep_without_output_path_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.cfg", "scenario=fig1\ntheta_count=3\n");
    assert_eq!(edlab(&["sweep", "--config", &cfg]).0, 1);
}

#[test]
fn sweep_rejects_custom_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let model = random_model(&mut Rng::new(1));
    let cfg = write(
        dir.path(),
        "c.cfg",
        &edlab_cli::config::custom_config_text(&model, None, 1),
    );
    let out_path = dir.path().join("c.csv");
    assert_eq!(
        edlab(&[
            "sweep",
            "--config",
            &cfg,
            "--out",
            out_path.to_str().unwrap()
        ])
        .0,
        1
    );
}

#[test]
fn sweep_unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.cfg",
        "scenario=fig1\ntheta_count=2\nwitness.samples=5\n",
    );
    let bad = dir.path().join("missing_dir").join("s.csv");
    assert_eq!(
        edlab(&["sweep", "--config", &cfg, "--out", bad.to_str().unwrap()]).0,
        3
    );
}

#[test]
fn verify_small_run_passes() {
    let (code, out, _) = edlab(&["verify", "--trials", "50", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "result"), "pass");
}

#[test]
fn injected_fault_exits_two_with_replays() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("replays");
    let (code, out, _) = edlab(&[
        "verify",
        "--trials",
        "200",
        "--seed",
        "7",
        "--inject-fault",
        "flip-witness-sign",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert_eq!(value(&out, "result"), "fail");
    let files: Vec<_> = std::fs::read_dir(&dump).unwrap().collect();
    assert!(!files.is_empty());
    let replay = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    parse_config(&replay).unwrap();

    // The replayed model loads through `report` like any other config.
    let cfg = write(dir.path(), "replay.cfg", &replay);
    assert_eq!(edlab(&["report", "--config", &cfg]).0, 0);
}

#[test]
fn frontier_writes_three_curves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let (code, out, _) = edlab(&[
        "frontier",
        "--cab",
        "0.5",
        "--da",
        "1",
        "--db",
        "0.8",
        "--grid",
        "21",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("name,epsilon_a,eta_b"));
    for name in ["ozawa", "branciard", "new"] {
        assert!(
            text.lines().any(|l| l.starts_with(&format!("{name},"))),
            "{name}"
        );
    }
}
