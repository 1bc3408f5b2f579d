use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn slim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PATH3: &str = "3 2 undirected\n0 1\n1 2\n";

fn encoded(dir: &Path, body: &str, extra: &[&str]) -> std::path::PathBuf {
    let g = dir.join("g.txt");
    let a = dir.join("g.slim");
    std::fs::write(&g, body).unwrap();
    let mut args = vec!["encode", "--in", path_str(&g), "--out", path_str(&a)];
    args.extend_from_slice(extra);
    let o = slim(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    a
}

#[test]
fn path_round_trip_and_queries() {
    let dir = tempfile::tempdir().unwrap();
    let a = encoded(dir.path(), PATH3, &[]);
    let o = slim(&["decode", "--in", path_str(&a), "--format", "text"]);
    assert_eq!(stdout(&o), PATH3);
    assert_eq!(stdout(&slim(&["query", "--in", path_str(&a), "deg", "1"])), "2\n");
    assert_eq!(stdout(&slim(&["query", "--in", path_str(&a), "near", "0", "2", "3"])), "0 1 2\n");
    assert_eq!(stdout(&slim(&["query", "--in", path_str(&a), "near", "0", "2", "1"])), "none\n");
    assert_eq!(stdout(&slim(&["query", "--in", path_str(&a), "nbrs", "1"])), "0 2\n");
    assert_eq!(stdout(&slim(&["query", "--in", path_str(&a), "adj", "2", "0"])), "0\n");
}

#[test]
fn encode_reports_exactly_the_requested_sections() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let a = dir.path().join("g.slim");
    std::fs::write(&g, PATH3).unwrap();
    let o = slim(&["encode", "--in", path_str(&g), "--out", path_str(&a), "--sections", "deg,adj,nr3"]);
    let line = stdout(&o);
    let tags: Vec<&str> = line.split_whitespace().filter_map(|kv| kv.strip_prefix("section_")).map(|kv| kv.split('=').next().unwrap()).collect();
    assert_eq!(tags, ["LBL", "DEG", "ADJ", "NR3"]);
    assert!(line.starts_with("n=3 arcs=4 payload_bits="));
}

#[test]
fn batch_queries_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let a = encoded(dir.path(), PATH3, &["--sections", "deg"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_slim"))
        .args(["query", "--in", path_str(&a), "--batch"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"deg 0\ndeg 1\nadj 0 1\ndeg 9\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(!o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[..2], ["1", "2"]);
    assert!(lines[2].starts_with("error=") && lines[2].contains("ADJ"));
    assert_eq!(lines[3], "error=unknown vertex 9");
}

#[test]
fn colors_survive_and_are_queryable() {
    let dir = tempfile::tempdir().unwrap();
    let body = "4 3\n0 1\n1 2\n2 3\nc 0 1\nc 1 2\nc 2 1\nc 3 2\n";
    let a = encoded(dir.path(), body, &[]);
    let o = slim(&["decode", "--in", path_str(&a)]);
    assert_eq!(stdout(&o), body.replace("4 3\n", "4 3 undirected\n"));
    for (v, c) in [(0, "1"), (1, "2"), (2, "1"), (3, "2")] {
        assert_eq!(stdout(&slim(&["query", "--in", path_str(&a), "color", &v.to_string()])).trim(), c);
    }
}

#[test]
fn corrupted_archive_fails_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let a = encoded(dir.path(), PATH3, &[]);
    let mut bytes = std::fs::read(&a).unwrap();
    bytes[2] ^= 0xff;
    std::fs::write(&a, &bytes).unwrap();
    let o = slim(&["decode", "--in", path_str(&a)]);
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error="));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    std::fs::write(&g, "3 2\n0 1\n1 z\n").unwrap();
    let o = slim(&["encode", "--in", path_str(&g), "--out", path_str(&dir.path().join("x"))]);
    assert!(!o.status.success());
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 3"));
}

#[test]
fn generated_output_is_reproducible() {
    let run = || stdout(&slim(&["generate", "--kind", "maximal-planar", "--n", "200", "--seed", "4"]));
    assert_eq!(run(), run());
    let enc = |dir: &Path| {
        let a = dir.join("a.slim");
        let o = slim(&["encode", "--kind", "tree", "--n", "500", "--seed", "2", "--out", path_str(&a)]);
        (stdout(&o), std::fs::read(a).unwrap())
    };
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(enc(d1.path()), enc(d2.path()));
}

#[test]
fn verify_passes_and_injected_faults_are_named() {
    let o = slim(&["verify", "--kind", "grid", "--n", "300"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verify=pass\n"));
    let o = slim(&["verify-director", "--kind", "maximal-planar", "--n", "300", "--inject", "drop-arc"]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("check=director_orientation result=fail"));
    let o = slim(&["verify-partition", "--kind", "tree", "--n", "2000"]);
    assert!(o.status.success());
}

#[test]
fn missing_input_is_a_single_line_error() {
    let o = slim(&["encode", "--out", "/nonexistent/x"]);
    assert!(!o.status.success());
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().count(), 1);
}
