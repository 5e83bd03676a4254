use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_side-bandits"))
}

#[test]
fn writes_csv_from_edge_list_and_means_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let means = dir.path().join("m.txt");
    fs::write(
        &graph,
        "# two triangles\n6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n",
    )
    .unwrap();
    fs::write(&means, "0.9\n0.5\n0.4\n0.6\n0.3\n0.2\n").unwrap();

    let run = |out: &str| {
        let out = dir.path().join(out);
        let status = bin()
            .args(["--edge-list", graph.to_str().unwrap()])
            .args(["--means", means.to_str().unwrap()])
            .args(["--horizon", "500", "--runs", "5", "--seed", "3"])
            .args([
                "--policy", "ucb1", "--policy", "ucb-n", "--policy", "ucb-maxn",
            ])
            .args(["--output", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(
            status.status.success(),
            "{}",
            String::from_utf8_lossy(&status.stderr)
        );
        let stderr = String::from_utf8_lossy(&status.stderr).to_string();
        assert!(stderr.contains("cover: 2 cliques"), "{stderr}");
        fs::read_to_string(out).unwrap()
    };

    let a = run("a.csv");
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "policy,t,mean_per_step_regret,stderr,num_cliques");
    assert!(lines[1].starts_with("ucb-maxn,1,"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",2")));
    assert!(lines.iter().any(|l| l.starts_with("ucb1,500,")));
    assert_eq!(a, run("b.csv"));
}

#[test]
fn stdout_when_no_output_path() {
    let out = bin()
        .args(["--graph", "star:5", "--means", "uniform:0.1:0.9:seed2"])
        .args([
            "--horizon",
            "20",
            "--runs",
            "2",
            "--policy",
            "epsilon-greedy",
        ])
        .args(["--epsilon-c", "2", "--cover-fraction", "0.4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("policy,t,"));
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("epsilon-greedy,20,"));
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    let out = bin()
        .args([
            "--graph",
            "complete:5",
            "--means",
            "m.txt",
            "--horizon",
            "10",
        ])
        .args(["--cover-fraction", "1.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cover-fraction"));

    let out = bin().arg("--help").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("--edge-list"));
}

#[test]
fn missing_means_file_reports_path() {
    let out = bin()
        .args([
            "--graph",
            "path:4",
            "--means",
            "/no/such/means.txt",
            "--horizon",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/means.txt"));
}
