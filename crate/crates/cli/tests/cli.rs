use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spatial-rc"))
        .args(args)
        .env_remove("SPATIAL_RC_THREADS")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data_rows(p: &Path) -> Vec<String> {
    fs::read_to_string(p)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(str::to_owned)
        .collect()
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.toml");
    fs::write(&p, format!("schema_version = 1\nname = \"t\"\nseed = 4\n{body}")).unwrap();
    p.to_str().unwrap().to_owned()
}

const SMALL: &str = r#"
[signal]
kind = "random"
length = 1000

[reservoir]
cols = 4
rows = 3
model = { kind = "tanh_lattice", gain_low = 0.2, gain_high = 5.0 }

[metrics]
k = 5
"#;

#[test]
fn random_signal_has_requested_length() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["generate", "--length", "1500", "--seed", "2", "-o", path(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = data_rows(&dir.path().join("signal.csv"));
    assert_eq!(rows.len(), 1500);
    assert!(rows.iter().all(|r| {
        let v: f64 = r.split(',').nth(1).unwrap().parse().unwrap();
        (-1.0..=1.0).contains(&v)
    }));
}

#[test]
fn zero_length_signal_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["generate", "--length", "0", "-o", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("signal.length"), "{}", stderr(&o));
}

#[test]
fn mackey_glass_header_records_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["generate", "--kind", "mackey-glass", "-o", path(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("signal.csv")).unwrap();
    let header: String = text.lines().filter(|l| l.starts_with('#')).collect::<Vec<_>>().join("\n");
    for p in ["a=0.2", "b=0.1", "n=10", "tau=23"] {
        assert!(header.contains(p), "{p} missing from\n{header}");
    }
    assert_eq!(data_rows(&dir.path().join("signal.csv")).len(), 2001);
}

#[test]
fn zero_memory_window_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &SMALL.replace("k = 5", "k = 0"));
    let o = cli(&["analyze", "-c", &config, "-o", path(&dir.path().join("out"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("MC requires k ≥ 1"), "{}", stderr(&o));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn diverging_reservoir_reports_unstable_regime() {
    let dir = tempfile::tempdir().unwrap();
    let body = SMALL.replace(
        "model = { kind = \"tanh_lattice\", gain_low = 0.2, gain_high = 5.0 }",
        "model = { kind = \"delay_line\" }\ndrive = { input_gain = 1e7 }",
    );
    let config = write_config(dir.path(), &body);
    let o = cli(&["analyze", "-c", &config, "-o", path(&dir.path().join("out"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unstable regime"), "{}", stderr(&o));
}

#[test]
fn benchmark_without_signal_names_the_section() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "[[models]]\nname = \"a\"\ncols = 2\nrows = 2\nmodel = { kind = \"lti_filter_bank\" }\n",
    );
    let o = cli(&["benchmark", "-c", &config, "-o", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("signal"), "{}", stderr(&o));
}

#[test]
fn benchmark_writes_every_model_and_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"
[signal]
kind = "mackey_glass"
t_end = 800.0

[task]
k_max = 6
washout = 50

[[models]]
name = "low"
cols = 3
rows = 3
model = { kind = "tanh_lattice", gain_low = 0.2, gain_high = 0.2 }

[[models]]
name = "high"
cols = 3
rows = 3
model = { kind = "tanh_lattice", gain_low = 5.0, gain_high = 5.0 }

[[models]]
name = "bank"
cols = 3
rows = 3
model = { kind = "lti_filter_bank" }
"#;
    let config = write_config(dir.path(), body);
    let o = cli(&["benchmark", "-c", &config, "-o", path(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = data_rows(&dir.path().join("benchmark.csv"));
    assert_eq!(rows.len(), 3 * 6 + 6);
    assert_eq!(rows.iter().filter(|r| r.starts_with("persistence,")).count(), 6);
    for r in &rows {
        let mse: f64 = r.split(',').nth(2).unwrap().parse().unwrap();
        assert!(mse.is_finite() && mse >= 0.0, "{r}");
    }
}

#[test]
fn echoed_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL);
    let first = dir.path().join("first");
    let o = cli(&["analyze", "-c", &config, "--seed", "9", "-o", path(&first)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let second = dir.path().join("second");
    let echoed = first.join("config.toml");
    let o = cli(&["analyze", "-c", path(&echoed), "-o", path(&second)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut compared = 0;
    for entry in fs::read_dir(&first).unwrap() {
        let name = entry.unwrap().file_name();
        assert_eq!(
            fs::read(first.join(&name)).unwrap(),
            fs::read(second.join(&name)).unwrap(),
            "{name:?} differs"
        );
        compared += 1;
    }
    assert!(compared >= 12);
}

#[test]
fn filter_bank_config_is_nearly_linear() {
    let dir = tempfile::tempdir().unwrap();
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/lti_filter_bank.toml");
    let o = cli(&["analyze", "-c", path(&config), "-o", path(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let nl: Vec<f64> = data_rows(&dir.path().join("nl.csv"))
        .iter()
        .map(|r| r.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(nl.len(), 16);
    assert!(nl.iter().sum::<f64>() / 16.0 < 0.05);
}
