use std::path::Path;
use std::process::{Command, Output};

fn dotent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dotent"))
        .args(args)
        .output()
        .expect("spawn dotent")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows (header comments and the column line stripped), parsed as floats.
fn rows(o: &Output) -> Vec<Vec<f64>> {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn evolve_without_hopping_stays_separable() {
    let o = dotent(&[
        "evolve",
        "--delta-ratio",
        "1",
        "--eta-ratio",
        "0",
        "--t-max",
        "10",
        "--steps",
        "201",
    ]);
    assert!(o.status.success());
    let header = stdout(&o)
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .to_string();
    assert_eq!(header, "omega_t,p0,p1,p2,negativity,concurrence");
    let data = rows(&o);
    assert_eq!(data.len(), 201);
    assert!(data.iter().all(|r| r[4] <= 1e-9 && r[5] <= 1e-9));
    assert!(data.iter().all(|r| (r[1] + r[2] + r[3] - 1.0).abs() < 1e-8));
}

#[test]
fn evolve_rejects_degenerate_time_axis() {
    let o = dotent(&["evolve", "--t-max", "0", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn evolve_with_dephasing_starts_in_vacuum() {
    let o = dotent(&[
        "evolve",
        "--gamma-ratio",
        "0.05",
        "--eta-ratio",
        "0.1",
        "--t-max",
        "5",
        "--steps",
        "51",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("resolved method: lindblad"));
    let first = &rows(&o)[0];
    assert_eq!(first[..5], [0.0, 1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn figure_sweeps_carry_their_parameters() {
    let o = dotent(&["sweep", "--figure", "4a"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "# figure=4a"));
    assert!(text.contains("gamma_ratio: 0.01"));
    assert_eq!(rows(&o).len(), 101 * 501);

    let o = dotent(&["sweep", "--figure", "fig1"]);
    assert!(o.status.success());
    let header = stdout(&o)
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .to_string();
    assert_eq!(header, "param_value,omega_t,p0,p1,p2");
}

#[test]
fn figure_usage_errors() {
    assert_eq!(dotent(&["sweep", "--figure", "5"]).status.code(), Some(2));
    let o = dotent(&["sweep", "--figure", "1", "--param-max", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("param-max"));
}

#[test]
fn explicit_sweep_over_dephasing() {
    let o = dotent(&[
        "sweep",
        "--param",
        "gamma-ratio",
        "--param-min",
        "0",
        "--param-max",
        "0.2",
        "--points",
        "3",
        "--eta-ratio",
        "2",
        "--t-max",
        "5",
        "--steps",
        "11",
        "--observables",
        "p2,negativity",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let data = rows(&o);
    assert_eq!(data.len(), 33);
    assert_eq!([data[0][0], data[11][0], data[22][0]], [0.0, 0.1, 0.2]);
}

#[test]
fn entangle_reference_states() {
    let dir = tempfile::tempdir().unwrap();
    let single = write(
        dir.path(),
        "single.json",
        r#"{"dim": 3, "rho": [[0,0],[0,0],[0,0], [0,0],[1,0],[0,0], [0,0],[0,0],[0,0]]}"#,
    );
    let o = dotent(&["entangle", "--rho", &single]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"negativity": 1, "concurrence": 1}"#);

    let vacuum = write(
        dir.path(),
        "vacuum.json",
        r#"{"dim": 4, "rho": [[1,0],[0,0],[0,0],[0,0], [0,0],[0,0],[0,0],[0,0],
                              [0,0],[0,0],[0,0],[0,0], [0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let o = dotent(&["entangle", "--rho", &vacuum]);
    assert_eq!(stdout(&o).trim(), r#"{"negativity": 0, "concurrence": 0}"#);
}

#[test]
fn entangle_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let skew = write(
        dir.path(),
        "skew.json",
        r#"{"dim": 3, "rho": [[0.5,0],[0.3,0],[0,0], [0,0],[0.5,0],[0,0], [0,0],[0,0],[0,0]]}"#,
    );
    let o = dotent(&["entangle", "--rho", &skew]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diagnostics:"));

    let broken = write(dir.path(), "broken.json", r#"{"dim": 3, "rho": [[1,0]]}"#);
    assert_eq!(
        dotent(&["entangle", "--rho", &broken]).status.code(),
        Some(2)
    );
    assert_eq!(
        dotent(&["entangle", "--rho", "/nonexistent/rho.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn phonon_rate_values_and_divergence() {
    let rate = |args: &[&str]| -> f64 {
        let mut all = vec!["phonon-rate"];
        all.extend_from_slice(args);
        let o = dotent(&all);
        assert!(o.status.success());
        stdout(&o).trim().parse().unwrap()
    };
    assert!((rate(&["--n", "1"]) - 1.0).abs() < 1e-8);
    assert!((rate(&["--n", "3"]) - 6.0).abs() < 6e-8);
    assert!((rate(&["--n", "1", "--prefactor", "2.5"]) - 2.5).abs() < 1e-8);
    assert_eq!(
        dotent(&["phonon-rate", "--n", "0", "--temperature", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn manifest_replays_through_config() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let o = dotent(&[
        "evolve",
        "--delta-ratio",
        "0.7",
        "--eta-ratio",
        "1.3",
        "--phi",
        "0.4",
        "--t-max",
        "6",
        "--steps",
        "61",
        "--out",
        first.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let original = std::fs::read_to_string(&first).unwrap();

    // The output file is itself a valid config; only the output path changes.
    let second = dir.path().join("second.csv");
    let o = dotent(&[
        "evolve",
        "--config",
        first.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let replay = std::fs::read_to_string(&second).unwrap();
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with("# out="))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&original), strip(&replay));
}

#[test]
fn config_rejects_foreign_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.txt", "figure=1\n");
    assert_eq!(dotent(&["evolve", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn presets_lists_all_figures() {
    let o = dotent(&["presets"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    for id in ["1", "2", "3a", "3b", "4a", "4b"] {
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().next() == Some(id)),
            "missing {id}"
        );
    }
}
