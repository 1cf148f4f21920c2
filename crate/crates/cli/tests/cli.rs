use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diagramrep"))
        .args(args)
        .env_remove("DIAGRAMREP_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compose_figure_one() {
    let o = run(&[
        "compose",
        "4,6:{1,4}{2,3,4',5'}{1',2',6'}{3'}",
        "6,5:{1,2}{3,4,1'}{5,4',5'}{6}{2',3'}",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4,5:{1,4}{2,3,1',4',5'}{2',3'}\nphi=1\n");
}

#[test]
fn compose_json() {
    let o = run(&["--format", "json", "compose", "1,1:{1,1'}", "1,1:{1}{1'}"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["phi"], 0);
}

#[test]
fn rep_json() {
    let o = run(&["--format", "json", "rep", "2,2:{1,2,1'}{2'}"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["data"],
        serde_json::json!([[1, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 1]])
    );
    assert_eq!(v["rows"], serde_json::json!([[], [1], [2], [1, 2]]));
}

#[test]
fn rep_text_integer() {
    let o = run(&["--semiring", "int", "rep", "2,2:{1}{2}{1',2'}"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    for row in &lines[1..] {
        let cells: Vec<&str> = row.split('|').nth(1).unwrap().split_whitespace().collect();
        assert_eq!(cells, ["1", "0", "0", "1"]);
    }
}

#[test]
fn enumerate_counts() {
    for (family, m, n, want) in [
        ("TL", "4", "4", "14"),
        ("P", "2", "2", "15"),
        ("B", "3", "3", "15"),
    ] {
        let o = run(&["enumerate", family, m, n, "--count"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want, "{family}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["rep", "2,2:{1,9}"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "P", "9", "9"]).status.code(), Some(3));
    assert_eq!(
        run(&["--max-size", "4", "enumerate", "P", "3", "3", "--count"])
            .status
            .code(),
        Some(3)
    );
    let env = Command::new(env!("CARGO_BIN_EXE_diagramrep"))
        .args(["enumerate", "P", "3", "3", "--count"])
        .env("DIAGRAMREP_MAX_SIZE", "4")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert_eq!(run(&["rho", "1,1:{1,1'}"]).status.code(), Some(4));
    assert_eq!(run(&["reduce", "2,2:{1,2,1'}{2'}"]).status.code(), Some(4));
    assert_eq!(
        run(&["--semiring", "boolean", "linear", "1,1: {1,1'}"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn rho_with_twist() {
    let o = run(&["--semiring", "int", "rho", "1,1:{1,1'}", "--twist", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains('4'));
}

#[test]
fn linear_sum() {
    let o = run(&[
        "--semiring",
        "int",
        "linear",
        "2,2: {1,2,1'}{2'} + {1,2,2'}{1'} + {1}{2}{1',2'}",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains('3'));
}

#[test]
fn verify_suites() {
    let list = run(&["verify", "--list"]);
    assert_eq!(list.status.code(), Some(0));
    assert!(stdout(&list).contains("twisting-identity"));
    assert_eq!(run(&["verify", "phi", "ones-lemma"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    // Orbits of Temperley-Lieb carry no prediction.
    assert_eq!(run(&["verify", "orbits"]).status.code(), Some(0));
    let forced = run(&["--semiring", "int", "verify", "phi"]);
    assert_eq!(forced.status.code(), Some(1));
}

#[test]
fn render_identity() {
    let o = run(&["render", "2,2:{1,1'}{2,2'}"]);
    assert_eq!(stdout(&o), " 1  2\n A  B\n A  B\n1' 2'\n");
}

#[test]
fn reads_files() {
    let path = std::env::temp_dir().join(format!("diagramrep-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "1,1:{1}{1'}\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = run(&["compose", &arg, &arg]);
    std::fs::remove_file(&path).ok();
    assert_eq!(stdout(&o), "1,1:{1}{1'}\nphi=1\n");
}
