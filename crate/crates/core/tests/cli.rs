use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-codes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CYCLE: [&str; 4] = ["--q", "5", "--matrix", "1,1,0;0,1,1;1,0,1"];

#[test]
fn params_csv_for_the_three_cycle() {
    let o = run(&[&["params"], &CYCLE[..], &["--degrees", "1..5", "--format", "csv"]].concat());
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "d,length,dim,delta,delta_status,singleton_defect,mds\n\
         1,32,4,23,exact,6,false\n\
         2,32,10,8,exact,15,false\n\
         3,32,20,2..13,bounded,,\n\
         4,32,29,2..4,bounded,,\n\
         5,32,32,1,weight-one,0,true\n"
    );
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("toric-codes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycle.conf");
    std::fs::write(
        &path,
        "# three-cycle instance\nq = 5\nrow = 1,1,0\nrow = 0,1,1\nrow = 1,0,1\ndegrees = 1..5\nformat = csv\n",
    )
    .unwrap();
    let path = path.to_str().unwrap();
    let o = run(&["params", "--config", path, "--degrees", "1..2", "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[0]["delta"], 23);
    assert_eq!(rows[1]["dim"], 10);
    assert_eq!(rows[0]["delta_status"], "exact");

    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "q = 5\nrow = 1,1\nrow = 1\n").unwrap();
    let o = run(&["params", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 2 has 1 entries, expected 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ideal_subcommand() {
    let o = run(&[&["ideal", "y"], &CYCLE[..]].concat());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
    assert_eq!(stdout(&o).lines().next(), Some("t3^4 - t4^4"));
    let o = run(&["ideal", "y", "--q", "5", "--matrix", "1"]);
    assert_eq!(stdout(&o), "t1^4 - t2^4\n");
}

#[test]
fn torus_subcommand() {
    let o = run(&[
        "torus",
        "--q",
        "11",
        "--s",
        "2",
        "--degrees",
        "1..13",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let deltas: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(
        deltas,
        ["90", "80", "70", "60", "50", "40", "30", "20", "10", "9", "8", "7", "6"]
    );

    let o = run(&[
        "torus",
        "--q",
        "7",
        "--s",
        "1",
        "--degrees",
        "1..6",
        "--cross-check",
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let deltas: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(deltas, ["5", "4", "3", "2", "1", "1"]);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",0,true")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("distances on 6"));

    let o = run(&["torus", "--q", "7", "--s", "1", "--degrees", "3..2", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "d,length,dim,delta,delta_status,singleton_defect,mds\n");
    assert_eq!(
        run(&["torus", "--q", "2", "--s", "2", "--degrees", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn verify_subcommand() {
    let o = run(&[&["verify"], &CYCLE[..]].concat());
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("all checks passed\n"));
}

#[test]
fn resource_limit_exit_code() {
    let o = run(&[
        "params",
        "--q",
        "101",
        "--matrix",
        "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1",
        "--degrees",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit exceeded"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["params"]).status.code(), Some(1));
    assert_eq!(
        run(&["params", "--q", "5", "--matrix", "1", "--format", "xml"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["params", "--q", "6", "--matrix", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn output_is_byte_stable() {
    let args = [&["params"], &CYCLE[..], &["--degrees", "0..5", "--threads", "4"]].concat();
    let first = run(&args);
    assert!(first.status.success());
    for _ in 0..2 {
        assert_eq!(run(&args).stdout, first.stdout);
    }
    let single = run(&[&["params"], &CYCLE[..], &["--degrees", "0..5"]].concat());
    assert_eq!(single.stdout, first.stdout);
}
