use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_profile-atlas"));
    c.env_remove("PROFILE_ATLAS_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn profile_command() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let o = run(&["profile", &c5]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 1/2 1/2 0\n"));

    let k3 = write(dir.path(), "k3.g6", ">>graph6<<Bw\n");
    let o = run(&["profile", &k3]);
    assert!(stdout(&o).starts_with("0 0 0 1\n"), "{}", stdout(&o));

    let small = write(dir.path(), "k2.txt", "2 1\n0 1\n");
    let o = run(&["profile", &small]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("need at least 3 vertices"));

    let bad = write(dir.path(), "bad.txt", "4 2\n0 1\n1 9\n");
    let o = run(&["profile", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = run(&["profile", &c5, "--format", "csv"]);
    assert_eq!(stdout(&o).lines().next(), Some("p0,p1,p2,p3"));
}

#[test]
fn region_and_invert_exit_codes() {
    assert_eq!(
        run(&["region", "k3", "0.125", "0.125"]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["region", "tf", "0", "0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["region", "tf", "2", "0"]).status.code(), Some(2));
    let o = run(&["invert", "tf", "0.25", "0"]);
    assert_eq!(stdout(&o), "alpha=0.5 q=1 residual<1e-12\n");
    assert_eq!(run(&["invert", "tf", "0.9", "0.3"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn boundary_outputs() {
    let o = run(&["region", "tf", "--boundary", "50"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("curve,t,p0,p1"));
    assert_eq!(text.lines().count(), 51);
    let o = run(&["region", "k3", "--boundary", "10", "--format", "svg"]);
    assert!(stdout(&o).starts_with("<svg"));
}

#[test]
fn sample_defaults_and_determinism() {
    let a = run(&["sample", "--n", "300", "--seed", "4"]);
    let b = run(&["sample", "--n", "300", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(
        text.lines().next(),
        Some("trial,seed,p0_emp,p3_emp,p0_exp,p3_exp,dev_max")
    );
    assert_eq!(text.lines().count(), 1 + 30 + 1);
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("# n=300 trials=30"));
}

#[test]
fn verify_command() {
    let o = run(&["verify", "7", "total-prob"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations=0"));
    let o = run(&["verify", "6", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = run(&["verify", "8", "census"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unsupported n"));
}

#[test]
fn plot_writes_svg_and_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("k3.svg");
    let o = bin()
        .env("PROFILE_ATLAS_CACHE", &cache)
        .args(["plot", "k3", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains(r#"viewBox="0 0 800 800""#));
    assert_eq!(svg.matches("<circle").count(), 1044);
    assert!(cache.join("census_n7_all.csv").is_file());

    let empty = write(dir.path(), "empty.csv", "p0,p1,p2,p3\n");
    let o = run(&["plot", "tf", "--n", "0", "--scatter", &empty]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("<circle").count(), 0);

    let o = run(&["plot", "tf", "--scatter", "/definitely/missing.csv"]);
    assert_eq!(o.status.code(), Some(2));
}
