use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn mbgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbgame")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn generated(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let o = mbgame(&[&["generate"], args].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    write(dir, name, &stdout(&o))
}

#[test]
fn solve_cycle() {
    let dir = TempDir::new().unwrap();
    let c5 = generated(&dir, "c5.g", &["cycle", "n=5"]);
    let o = mbgame(&["solve", "--graph", c5.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("c_g = 2"), "{out}");
    assert!(out.contains("principal variation: v"));
    let o = mbgame(&["solve", "--graph", c5.to_str().unwrap(), "--variant", "connected", "--threads", "3"]);
    assert!(stdout(&o).contains("c_g = 2"));
}

#[test]
fn solve_target_and_skip_variants() {
    let dir = TempDir::new().unwrap();
    let p = generated(&dir, "p4.g", &["path", "n=4"]);
    let x = write(&dir, "x.set", "0\n");
    let target = format!("target:{}", x.display());
    let o = mbgame(&["solve", "--graph", p.to_str().unwrap(), "--variant", &target]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let skip = format!("skip:1,1,{target}");
    let o = mbgame(&["solve", "--graph", p.to_str().unwrap(), "--variant", &skip]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = mbgame(&["solve", "--graph", p.to_str().unwrap(), "--variant", "skip:2,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let r = generated(&dir, "r.g", &["random_connected", "n=14", "m=25", "seed=1"]);
    let o = mbgame(&["solve", "--graph", r.to_str().unwrap(), "--max-states", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let bad = write(&dir, "bad.g", "n 3\ne 0 5\n");
    let o = mbgame(&["solve", "--graph", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(mbgame(&["solve", "--bogus"]).status.code(), Some(2));
    assert_eq!(mbgame(&["generate", "nosuch", "n=3"]).status.code(), Some(2));
}

#[test]
fn verify_named_strategies() {
    let dir = TempDir::new().unwrap();
    let king = generated(&dir, "king.g", &["king_grid_2rows", "m=4"]);
    let o = mbgame(&["verify", "--graph", king.to_str().unwrap(), "--alice", "king_mirror_alice", "--playouts", "50"]);
    let out = stdout(&o);
    assert!(out.contains("guaranteed value = 4"), "{out}");
    assert!(out.contains("random playouts: 50 plays"));
    let o = mbgame(&["verify", "--graph", king.to_str().unwrap(), "--bob", "king_mirror_alice"]);
    assert_eq!(o.status.code(), Some(2));
    let grid = generated(&dir, "grid.g", &["cartesian_grid", "rows=2", "cols=3"]);
    let o = mbgame(&["verify", "--graph", grid.to_str().unwrap(), "--bob", "cartesian_bob:rows=2,cols=3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn qgraph_on_matched_spider() {
    let dir = TempDir::new().unwrap();
    let g = generated(&dir, "spider.g", &["matched_spider", "k=4"]);
    let t = write(&dir, "spider.t", "q 4\n(spider matched (s 0 1 2 3) (k 4 5 6 7) (f 0:4 1:5 2:6 3:7))\n");
    let o = mbgame(&["qgraph", "--graph", g.to_str().unwrap(), "--tree", t.to_str().unwrap(), "--check-strategy"]);
    let out = stdout(&o);
    assert!(out.contains("c_g = 3"), "{out}");
    assert!(out.contains("strategy guarantees 3"));
    let wrong = write(&dir, "wrong.t", "q 4\n(spider matched (s 0 1 2 3) (k 4 5 6 7) (f 0:5 1:4 2:6 3:7))\n");
    let o = mbgame(&["qgraph", "--graph", g.to_str().unwrap(), "--tree", wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid tree"));
}

#[test]
fn reduce_cnf_and_hex() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.cnf", "p poscnf 2 1\n1 2 0\n");
    let o = mbgame(&["reduce", "--kind", "bipartite", "--in", phi.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.contains("k = 3, |V| = 6"), "{out}");
    let redo = write(&dir, "red.g", &out);
    let o = mbgame(&["solve", "--graph", redo.to_str().unwrap()]);
    assert!(stdout(&o).contains("c_g = 3"));
    let hex = write(&dir, "h.hex", "n 4\ne 0 1\ne 1 2\ne 2 3\ns 0\nt 3\n");
    let target = dir.path().join("planar.g");
    let o = mbgame(&["reduce", "--kind", "planar", "--in", hex.to_str().unwrap(), "--out", target.to_str().unwrap()]);
    assert!(stdout(&o).contains("k = 9, |V| = 58"));
    assert!(fs::read_to_string(&target).unwrap().contains("# role: 4 hub:s0^1"));
    let o = mbgame(&["reduce", "--kind", "wavy", "--in", hex.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_round_trips_and_uses_the_seed() {
    let a = stdout(&mbgame(&["generate", "random_connected", "n=9", "m=14", "--seed", "4"]));
    let b = stdout(&mbgame(&["--seed", "4", "generate", "random_connected", "n=9", "m=14"]));
    assert_eq!(a, b);
    let c = stdout(&mbgame(&["generate", "random_connected", "n=9", "m=14", "--seed", "5"]));
    assert_ne!(a, c);
    let g = mbgame::graph::parse_graph(&a).unwrap();
    assert_eq!(
        mbgame::graph::write_graph(&g),
        a.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect::<String>()
    );
}

#[test]
fn bench_subset() {
    let o = mbgame(&["bench", "--suite", "desk", "--only", "1,2"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.contains("[PASS]  1") && out.contains("2/2 criteria passed"), "{out}");
}
