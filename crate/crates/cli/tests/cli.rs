use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn twovc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twovc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn gen(dir: &TempDir, spec: &str, name: &str) -> String {
    let p = path(dir, name);
    let o = twovc(&["gen", spec, "--out", &p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn triangle() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "tri.txt");
    fs::write(&p, "p 2vc 3 3\ne 0 1\ne 1 2\ne 2 0\n").unwrap();
    let v = json(&twovc(&["solve", &p]));
    assert_eq!(v["edge_count"], 3);
    assert_eq!(v["schema"], 1);
}

#[test]
fn tight_seeded_and_verified() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "tight:1", "t1.txt");
    let ed = Path::new(&g).with_extension("ed");
    assert!(ed.exists());
    let report = path(&dir, "r.json");
    let o = twovc(&["solve", &g, "--initial", ed.to_str().unwrap(), "--out", &report]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["edge_count"], 25);

    let o = twovc(&["verify", &g, "--report", &report, "--decomposition", ed.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.ends_with("ok\n"));

    // dropping any edge of the output must break it
    let edges: Vec<(usize, usize)> = serde_json::from_value(v["edges"].clone()).unwrap();
    let mut body = format!("p 2vc 19 {}\n", edges.len() - 1);
    for (a, b) in &edges[1..] {
        body.push_str(&format!("e {a} {b}\n"));
    }
    let sub = path(&dir, "sub.txt");
    fs::write(&sub, body).unwrap();
    let o = twovc(&["verify", &g, "--subgraph", &sub]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("violation"));
}

#[test]
fn fig8_solid_edges() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "fig8", "f8.txt");
    let classes = fs::read_to_string(Path::new(&g).with_extension("classes")).unwrap();
    let solid: Vec<&str> = classes
        .lines()
        .filter_map(|l| l.strip_prefix("solid "))
        .collect();
    assert_eq!(solid.len(), 20);
    let mut body = format!("p 2vc 17 {}\n", solid.len());
    for e in &solid {
        body.push_str(&format!("e {e}\n"));
    }
    let sub = path(&dir, "solid.txt");
    fs::write(&sub, body).unwrap();
    let o = twovc(&["verify", &g, "--subgraph", &sub]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("2vc fail, 2ec ok"), "{text}");
}

#[test]
fn bench_tight_ratios() {
    let o = twovc(&["bench", "tight", "--k", "1..5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "ratio_opt").unwrap();
    let ratios: Vec<String> = lines.map(|l| l.split(',').nth(col).unwrap().to_string()).collect();
    // 25/19 and friends in lowest terms
    assert_eq!(ratios, ["25/19", "15/11", "65/47", "85/61", "7/5"]);
}

#[test]
fn bench_vv_two_factor_bound() {
    let o = twovc(&["bench", "vv", "--k", "1..4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let n = header.iter().position(|h| *h == "n").unwrap();
    let l = header.iter().position(|h| *h == "l_d2").unwrap();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[n], f[l], "{line}");
    }
}

#[test]
fn opt_and_bound() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "vv:1", "vv1.txt");
    let o = twovc(&["opt", &g]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("c opt 9\n"));
    let o = twovc(&["bound", &g]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("combined 8"));
}

#[test]
fn lemma_check() {
    let o = twovc(&["lemma107", "--samples", "2000"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("result ok\n"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(twovc(&["solve", &path(&dir, "missing.txt")]).status.code(), Some(3));
    assert_eq!(twovc(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(twovc(&["--help"]).status.code(), Some(0));
    assert_eq!(twovc(&["gen", "tight:0"]).status.code(), Some(3));

    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "p 2vc 3 2\ne 0 1\ne 1 2\n").unwrap();
    assert_eq!(twovc(&["solve", &bad]).status.code(), Some(3));

    let big = gen(&dir, "tight:1", "big.txt");
    assert_eq!(twovc(&["opt", &big]).status.code(), Some(4));
    assert_eq!(twovc(&["solve", &big]).status.code(), Some(4));
}
