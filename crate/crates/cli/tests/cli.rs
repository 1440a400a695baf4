use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dziobek"))
        .args(args)
        .env_remove("DZIOBEK_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn solve_kite_json() {
    let o = run(&["solve", "--alpha", "0.5", "--beta", "0.8", "--ansatz", "kite", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["report"]["symmetry"], "kite_axis_34");
    assert_eq!(v["result"]["report"]["converged"], true);
    assert_eq!(v["config"]["command"]["solve"]["newton"]["max_iter"], 100);
    assert!(v["result"]["oracle_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn negative_mass_is_a_usage_error() {
    let o = run(&["solve", "--alpha", "-1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--alpha"));
}

#[test]
fn bad_grid_names_the_flag() {
    let o = run(&["sweep", "--beta-grid", "1:0.5:0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--beta-grid"));
}

#[test]
fn rhombus_ansatz_needs_equal_masses() {
    let o = run(&["solve", "--alpha", "0.5", "--beta", "0.8", "--ansatz", "rhombus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_finds_one_rhombus() {
    let o = run(&["census", "--alpha", "0.7", "--beta", "0.7", "--resolution", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let classes = v["result"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["symmetry"], "rhombus");
}

#[test]
fn identical_runs_give_identical_bytes() {
    let args = ["census", "--alpha", "0.5", "--beta", "0.8", "--resolution", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let c = run(&seq);
    let strip = |o: &Output| stdout(o).replace("\"sequential\": true", "\"sequential\": false");
    assert_eq!(strip(&a), strip(&c));
}

#[test]
fn sweep_csv_and_plot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let plot = dir.path().join("shapes.csv");
    let o = run(&[
        "sweep",
        "--alpha-grid",
        "0.5,1",
        "--beta-grid",
        "0.5:1.5:0.5",
        "--format",
        "csv",
        "--output",
        out.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.contains('\r'));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "alpha,beta,a,b,c,d,e,f,nu,xi,lambda_cc,symmetry,iterations,residual");
    assert_eq!(rows.len(), 1 + 6);
    assert!(text.contains("# command.sweep.newton.tol: 1e-12"));
    let shapes = std::fs::read_to_string(&plot).unwrap();
    assert!(shapes.starts_with('#'));
    assert_eq!(shapes.lines().count(), 2 + 6 * 4);
}

#[test]
fn square_plot_is_a_square() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("square.csv");
    let o = run(&["solve", "--plot", plot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&plot).unwrap();
    let pts: Vec<(f64, f64)> = text
        .lines()
        .skip(2)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[3].parse().unwrap(), f[4].parse().unwrap())
        })
        .collect();
    assert_eq!(pts.len(), 4);
    let r: Vec<f64> = pts.iter().map(|(x, y)| (x * x + y * y).sqrt()).collect();
    for x in &r {
        assert!((x - r[0]).abs() < 1e-12);
    }
}

#[test]
fn realize_reads_solve_output() {
    let dir = tempfile::tempdir().unwrap();
    let solved = dir.path().join("kite.json");
    let o = run(&["solve", "--alpha", "0.4", "--beta", "1.5", "--output", solved.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["realize", "--input", solved.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["result"]["oracle_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["result"]["config"]["masses"][3].as_f64(), Some(1.5));
}

#[test]
fn missing_input_reports_path() {
    let o = run(&["realize", "--input", "/no/such/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/no/such/file.json"));
}

#[test]
fn verify_lemmas_passes() {
    let o = run(&["verify", "--suite", "lemmas", "--trials", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let results = v["result"].as_array().unwrap();
    assert_eq!(results.len(), 5);
    assert!(results.iter().all(|r| r["passed"] == true));
    assert_eq!(results[2]["seed"], 1729);
}
