use std::path::PathBuf;
use std::process::{Command, Output};

fn spikedrmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spikedrmt")).args(args).output().expect("binary runs")
}

/// Runs a whitespace-separated command line (paths must not contain spaces).
fn spikedrmt_line(line: &str) -> Output {
    spikedrmt(&line.split_whitespace().collect::<Vec<_>>())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spikedrmt-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_value(output: &Output, key: &str) -> Option<String> {
    String::from_utf8_lossy(&output.stdout).lines().find_map(|l| l.strip_prefix(&format!("{key}=")).map(str::to_string))
}

#[test]
fn density_writes_csv_and_svg() {
    let dir = scratch("density");
    let (csv, svg) = (dir.join("d.csv"), dir.join("d.svg"));
    let out = spikedrmt_line(&format!(
        "density --model shifted-gue --n 15 --r 5 --c 15 --grid -9:27:400 --out {} --out {}",
        csv.display(),
        svg.display()
    ));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let trace: f64 = stdout_value(&out, "trace_exact").unwrap().parse().unwrap();
    assert!((trace - 15.0).abs() < 1e-6);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("# model=shifted-gue"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 400);
    assert_eq!(std::fs::read_to_string(&svg).unwrap().matches("<polyline").count(), 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn monte_carlo_is_reproducible_from_the_command_line() {
    let dir = scratch("mc");
    let run = |name: &str| {
        let path = dir.join(name);
        let out = spikedrmt_line(&format!(
            "mc --model spiked-lue --m 4 --alpha 1 --btilde 0.5 --trials 500 --seed 9 --grid 0:40:81 --out {}",
            path.display()
        ));
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn scan_reports_the_separated_peak() {
    let out = spikedrmt(&["scan", "--model", "shifted-gue", "--n", "500", "--spikes", "0,2"]);
    assert!(out.status.success());
    let peak: f64 = stdout_value(&out, "spike=2.peak_locations").unwrap().parse().unwrap();
    assert!((peak - 39.53).abs() < 1.0);
    assert_eq!(stdout_value(&out, "spike=0.flag.no_separated_peak").as_deref(), Some("true"));
}

#[test]
fn configuration_errors_exit_with_status_two() {
    let missing = spikedrmt(&["density", "--model", "spiked-lue", "--m", "5"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--btilde"));
    assert_eq!(spikedrmt(&["figure", "fig9"]).status.code(), Some(2));
    assert_eq!(spikedrmt(&["verify", "--suite", "nothing"]).status.code(), Some(2));
}

#[test]
fn verify_prints_a_report() {
    let dir = scratch("verify");
    let path = dir.join("report.csv");
    let out = spikedrmt(&["verify", "--suite", "spectra", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("suite,check,status"));
    assert!(text.lines().skip(1).all(|l| l.contains(",pass,")));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn figure_writes_files_into_the_output_directory() {
    let dir = scratch("figure");
    let out = spikedrmt(&["figure", "fig2", "--outdir", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("fig2.csv").exists());
    assert!(dir.join("fig2.svg").exists());
    std::fs::remove_dir_all(dir).unwrap();
}
