//! End-to-end tests of the `hata` binary: flags, file formats, exit codes,
//! and byte-identical reruns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hata"))
}

fn run(args: &[&str], out_dir: &Path) -> Output {
    bin()
        .args(args)
        .args(["--out", out_dir.to_str().unwrap()])
        .output()
        .expect("binary runs")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hata-cli-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dimension_prints_both_roots() {
    let o = bin()
        .args(["dimension", "--h", "1.7320508"])
        .output()
        .unwrap();
    assert!(o.status.success());
    let s = stdout(&o);
    let grab = |key: &str| {
        s.lines()
            .find(|l| l.starts_with(key))
            .and_then(|l| l.split('=').nth(1))
            .and_then(|v| v.trim().parse::<f64>().ok())
            .unwrap()
    };
    let d = grab("resistance_dimension");
    let de = grab("euclidean_dimension");
    assert!((d - de).abs() < 1e-6, "{d} vs {de}");
    assert!((grab("coincide_at_h") - 1.7320508075688772).abs() < 1e-9);

    let o2 = bin().args(["dimension", "--h", "2"]).output().unwrap();
    let s2 = stdout(&o2);
    assert!(s2.contains("1.507126591639"));
}

#[test]
fn h_at_most_one_is_a_config_error() {
    let o = bin().args(["dimension", "--h", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("must exceed 1"), "{err}");
}

#[test]
fn inadmissible_alpha_is_a_config_error() {
    let dir = tmp_dir("badalpha");
    let o = run(&["mesh", "--h", "2", "--m", "2", "--alpha-re", "2.0"], &dir);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mesh_shapes_and_conductances() {
    let dir = tmp_dir("mesh");
    let o = run(&["mesh", "--h", "2", "--m", "0"], &dir);
    assert!(o.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("mesh.json")).unwrap()).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 2);

    let o = run(&["mesh", "--h", "2", "--m", "1"], &dir);
    assert!(o.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("mesh.json")).unwrap()).unwrap();
    let mut conductances: Vec<f64> = doc["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["conductance"].as_f64().unwrap())
        .collect();
    conductances.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let expect = [4.0 / 3.0, 8.0 / 3.0, 2.0, 4.0];
    let mut expect = expect.to_vec();
    expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (a, b) in conductances.iter().zip(expect) {
        assert!((a - b).abs() < 1e-12);
    }

    let o = run(&["mesh", "--h", "2", "--m", "5"], &dir);
    assert!(o.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("mesh.json")).unwrap()).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 65);
}

#[test]
fn harmonic_zero_boundary_writes_zero_files() {
    let dir = tmp_dir("zero");
    let o = run(
        &["harmonic", "--h", "2", "--m", "4", "--boundary", "0,0,0"],
        &dir,
    );
    assert!(o.status.success());
    let body = std::fs::read_to_string(dir.join("harmonic_function.csv")).unwrap();
    for line in body.lines().skip(2) {
        let value: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(value, 0.0);
    }
}

#[test]
fn harmonic_alpha_boundary_vanishes_on_the_interval() {
    let dir = tmp_dir("alpha");
    let o = run(
        &["harmonic", "--h", "2", "--m", "6", "--boundary", "1,0,0"],
        &dir,
    );
    assert!(o.status.success());
    let body = std::fs::read_to_string(dir.join("harmonic_trace.csv")).unwrap();
    for line in body.lines().skip(2) {
        let value: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(value.abs() <= 1e-13);
    }
}

#[test]
fn eigen_count_zero_writes_an_empty_table() {
    let dir = tmp_dir("cnt0");
    let o = run(&["eigen", "--h", "2", "--m", "3", "--count", "0"], &dir);
    assert!(o.status.success(), "{:?}", o);
    let body = std::fs::read_to_string(dir.join("eigenvalues.csv")).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 2); // echo + header only
    assert_eq!(lines[1], "k,lambda,label,paired_k,pair_mismatch,residual");
}

#[test]
fn eigen_writes_table_and_vectors() {
    let dir = tmp_dir("eig");
    let o = run(
        &["eigen", "--h", "2", "--m", "6", "--count", "3", "--vectors"],
        &dir,
    );
    assert!(o.status.success());
    let body = std::fs::read_to_string(dir.join("eigenvalues.csv")).unwrap();
    let rows: Vec<&str> = body.lines().skip(2).collect();
    assert_eq!(rows.len(), 3);
    let first: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(first[0], "1");
    let lambda1: f64 = first[1].parse().unwrap();
    assert!((lambda1 - 9.888).abs() / 9.888 < 0.02, "{lambda1}");
    assert_eq!(first[2], "primary");
    for k in 1..=3 {
        assert!(dir.join(format!("eigenvector_{k:03}.csv")).exists());
    }
    // eigenvector files carry the eigen index column
    let vec_body = std::fs::read_to_string(dir.join("eigenvector_002.csv")).unwrap();
    assert!(vec_body.lines().nth(1).unwrap().ends_with(",k"));
    assert!(vec_body.lines().nth(2).unwrap().ends_with(",2"));
}

#[test]
fn eigen_count_beyond_interior_is_a_config_error() {
    let dir = tmp_dir("cnt-over");
    let o = run(&["eigen", "--h", "2", "--m", "2", "--count", "7"], &dir);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theta_harmonic_mode_is_constant() {
    let dir = tmp_dir("theta-h");
    let o = run(
        &["theta", "--h", "2", "--m", "5", "--boundary", "0,0,1"],
        &dir,
    );
    assert!(o.status.success());
    for level in [4, 5] {
        let body = std::fs::read_to_string(dir.join(format!("theta_level_{level}.csv"))).unwrap();
        for line in body.lines().skip(2) {
            let cells: Vec<&str> = line.split(',').collect();
            let theta: f64 = cells[1].parse().unwrap();
            assert!((theta - 0.25).abs() < 1e-12);
            assert_eq!(cells[3], "false");
        }
    }
}

#[test]
fn theta_on_a_derived_eigenfunction_reports_and_succeeds() {
    let dir = tmp_dir("theta-d");
    // find a derived index from the eigenvalue table first
    let o = run(&["eigen", "--h", "2", "--m", "6", "--count", "6"], &dir);
    assert!(o.status.success());
    let body = std::fs::read_to_string(dir.join("eigenvalues.csv")).unwrap();
    let derived_k = body
        .lines()
        .skip(2)
        .find(|l| l.contains(",derived,"))
        .map(|l| l.split(',').next().unwrap().to_owned())
        .expect("a derived eigenvalue among the first six");
    let o = run(
        &["theta", "--h", "2", "--m", "6", "--eigen-index", &derived_k],
        &dir,
    );
    assert!(o.status.success());
    let body = std::fs::read_to_string(dir.join("theta_level_6.csv")).unwrap();
    for line in body.lines().skip(2) {
        assert!(line.ends_with(",true"), "{line}");
    }
}

#[test]
fn theta_eigen_index_out_of_range_fails() {
    let dir = tmp_dir("theta-r");
    let o = run(
        &["theta", "--h", "2", "--m", "2", "--eigen-index", "900"],
        &dir,
    );
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["theta", "--h", "2", "--m", "3"], &dir);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let d1 = tmp_dir("det1");
    let d2 = tmp_dir("det2");
    for dir in [&d1, &d2] {
        assert!(
            run(&["eigen", "--h", "1.5", "--m", "5", "--count", "4"], dir)
                .status
                .success()
        );
        assert!(run(&["mesh", "--h", "1.5", "--m", "5"], dir)
            .status
            .success());
        assert!(run(
            &["harmonic", "--h", "3", "--m", "6", "--boundary", "0,0,1"],
            dir
        )
        .status
        .success());
    }
    for name in [
        "eigenvalues.csv",
        "mesh.json",
        "harmonic_function.csv",
        "harmonic_trace.csv",
    ] {
        let a = std::fs::read(d1.join(name)).unwrap();
        let b = std::fs::read(d2.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn json_format_embeds_the_config() {
    let dir = tmp_dir("json");
    let o = run(
        &[
            "harmonic",
            "--h",
            "2",
            "--m",
            "3",
            "--boundary",
            "0,0,1",
            "--format",
            "json",
        ],
        &dir,
    );
    assert!(o.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("harmonic_trace.json")).unwrap())
            .unwrap();
    assert_eq!(doc["config"]["h"], 2.0);
    assert_eq!(doc["config"]["m"], 3);
    assert_eq!(doc["rows"][0]["x"], 0.0);
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = tmp_dir("envdir");
    let o = bin()
        .args(["mesh", "--h", "2", "--m", "1"])
        .env("HATA_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.join("mesh.json").exists());
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tmp_dir("io");
    let blocker = dir.join("blocker");
    std::fs::write(&blocker, b"file, not a directory").unwrap();
    let o = run(&["mesh", "--h", "2", "--m", "1"], &blocker.join("sub"));
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn csv_files_echo_the_config_line() {
    let dir = tmp_dir("echo");
    let o = run(
        &["harmonic", "--h", "2.5", "--m", "3", "--boundary", "0,0,1"],
        &dir,
    );
    assert!(o.status.success());
    let body = std::fs::read_to_string(dir.join("harmonic_trace.csv")).unwrap();
    let first = body.lines().next().unwrap();
    assert!(first.starts_with("# alpha=0.5+0.28867513459481287i h=2.5 m=3 version="));
    assert_eq!(body.lines().nth(1).unwrap(), "x,value,birth_level");
}
