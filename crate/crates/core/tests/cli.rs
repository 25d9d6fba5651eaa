use std::path::Path;
use std::process::{Command, Output};

fn drwalk(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drwalk"))
        .arg("--out")
        .arg(out)
        .args(args)
        .env_remove("DRWALK_OUT_DIR")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn verify_finite_passes_and_sabotage_fails() {
    let dir = tempfile::tempdir().unwrap();
    let ok = drwalk(dir.path(), &["verify-finite", "--n-graphs", "20"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(read(dir.path(), "reports.csv").lines().count() > 20);
    assert!(read(dir.path(), "config.resolved").contains("command = verify-finite"));

    let bad = drwalk(dir.path(), &["verify-finite", "--n-graphs", "20", "--sabotage"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn usage_and_cap_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&drwalk(dir.path(), &["annealed", "tree-critical", "--n-samples", "0"])), 2);
    assert_eq!(code(&drwalk(dir.path(), &["annealed", "tree-critical", "--p", "1.5"])), 2);
    assert_eq!(code(&drwalk(dir.path(), &["verify-finite", "--n-max", "40"])), 2);
    assert_eq!(code(&drwalk(dir.path(), &["no-such-command"])), 2);
    let cap = drwalk(dir.path(), &["ids", "--p", "1", "-L", "40", "--realizations", "1", "--dense-cap", "500"]);
    assert_eq!(code(&cap), 3);

    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "preset = tree-critical\nunknown_key = 1\n").unwrap();
    let o = drwalk(dir.path(), &["--config", cfg.to_str().unwrap(), "annealed"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn resolved_config_replays_byte_identically() {
    let first = tempfile::tempdir().unwrap();
    let args = [
        "annealed",
        "z2-critical",
        "--n-samples",
        "400",
        "--size-cap",
        "400",
        "--t-points",
        "3",
        "--seed",
        "5",
        "--dense-cap",
        "200",
        "--probes",
        "8",
    ];
    let o = drwalk(first.path(), &args);
    assert!(matches!(code(&o), 0 | 1), "{}", String::from_utf8_lossy(&o.stderr));
    let resolved = read(first.path(), "config.resolved");
    assert!(resolved.contains("seed = 5") && resolved.contains("n_samples = 400"));

    let second = tempfile::tempdir().unwrap();
    let cfg = second.path().join("replay.cfg");
    std::fs::write(&cfg, &resolved).unwrap();
    let o2 = drwalk(second.path(), &["--config", cfg.to_str().unwrap(), "annealed"]);
    assert_eq!(code(&o), code(&o2), "{}", String::from_utf8_lossy(&o2.stderr));
    assert_eq!(read(first.path(), "campaign.csv"), read(second.path(), "campaign.csv"));
    assert_eq!(resolved, read(second.path(), "config.resolved"));
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |workers: &str| {
        let dir = tempfile::tempdir().unwrap();
        let o = drwalk(
            dir.path(),
            &[
                "--workers",
                workers,
                "tail",
                "tree-critical",
                "--n-samples",
                "5000",
                "--m-max",
                "1000",
                "--size-cap",
                "1000",
            ],
        );
        assert!(matches!(code(&o), 0 | 1));
        read(dir.path(), "tail.csv")
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn dump_graph_prints_a_parseable_cluster() {
    let dir = tempfile::tempdir().unwrap();
    let o = drwalk(dir.path(), &["dump-graph", "tree-critical", "--index", "3", "--size-cap", "200"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(drwalk::graph::FiniteGraph::from_text(&text).is_ok());
}
