use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use mgs_core::engine::{ReportDocument, TraceDocument};
use mgs_core::format::{deserialize, deserialize_labeled};
use mgs_core::search::SearchDocument;
use mgs_core::TorusFamily;

fn mgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgs")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mgs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn build_emits_a_document() {
    let o = mgs(&["build", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let (q, labels) = deserialize_labeled(&stdout(&o)).unwrap();
    assert_eq!(q.n_mutable(), 18);
    assert_eq!(q, TorusFamily::new(3).unwrap().quiver());
    assert_eq!(labels.unwrap().name(0), Some("a_1"));
}

#[test]
fn build_rejects_small_genus() {
    let o = mgs(&["build", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("genus 2"));
}

#[test]
fn build_formats() {
    let dot = stdout(&mgs(&["build", "3", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    let plain = stdout(&mgs(&["build", "3", "--format", "plain"]));
    assert!(plain.contains("c_1 -> b_1 x2"));
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("built.json", "");
    let o = mgs(&["build", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let q = deserialize(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(q.n_mutable(), 24);
}

#[test]
fn check_theorem() {
    let o = mgs(&["check", "--torus", "3", "--theorem"]);
    assert_eq!(o.status.code(), Some(0));
    let r: ReportDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.is_green && r.is_maximal);
    assert_eq!(r.final_colors, "R".repeat(18));
    assert!(r.permutation.is_some());
}

#[test]
fn check_truncated_file_fails() {
    let t = TorusFamily::new(3).unwrap();
    let labels = t.theorem_sequence().labels(&t.label_map());
    let path = scratch("truncated.seq", &labels[..67].join(" "));
    let o = mgs(&["check", "--torus", "3", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r: ReportDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.is_green && !r.is_maximal);
    assert_eq!(r.failure_index, None);
}

#[test]
fn check_red_step_reports_failure_index() {
    let path = scratch("red.seq", "f_3\nf_3\n");
    let o = mgs(&["check", "--torus", "3", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r: ReportDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.failure_index, Some(2));
}

#[test]
fn check_cycle_lemma() {
    let o = mgs(&["check", "--cycle", "4", "--cycle-lemma"]);
    assert_eq!(o.status.code(), Some(0));
    let o = mgs(&["check", "--cycle", "4", "--theorem"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_quiver_file_with_indices() {
    let a2 = scratch(
        "a2.json",
        r#"{"n_mutable": 2, "n_frozen": 2, "arrows": [[0, 1, 1], [0, 2, 1], [1, 3, 1]]}"#,
    );
    let seq = scratch("a2.seq", "1 0 1");
    let o = mgs(&["check", a2.to_str().unwrap(), "--file", seq.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // labels need a labeled quiver
    let seq = scratch("a2-labels.seq", "x y");
    let o = mgs(&["check", a2.to_str().unwrap(), "--file", seq.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_a2() {
    let a2 = scratch(
        "a2-search.json",
        r#"{"n_mutable": 2, "n_frozen": 2, "arrows": [[0, 1, 1], [0, 2, 1], [1, 3, 1]]}"#,
    );
    let o = mgs(&["search", a2.to_str().unwrap(), "--mode", "all", "--max-len", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let r: SearchDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.sequences, vec![vec!["0", "1"], vec!["1", "0", "1"]]);
    assert!(r.exhausted);
}

#[test]
fn search_budget_one_is_truncated() {
    let o = mgs(&["search", "--torus", "3", "--budget", "1", "--max-len", "68"]);
    assert_eq!(o.status.code(), Some(1));
    let r: SearchDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!r.exhausted);
    assert_eq!(r.states_explored, 1);
}

#[test]
fn search_cycle_labels() {
    let o = mgs(&["search", "--cycle", "3", "--mode", "shortest", "--max-len", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let r: SearchDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.sequences.len(), 1);
    assert!(r.sequences[0].iter().all(|l| l.starts_with("f_")));
}

#[test]
fn trace_theorem() {
    let o = mgs(&["trace", "--torus", "3", "--theorem", "--snapshots"]);
    assert_eq!(o.status.code(), Some(0));
    let t: TraceDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.steps.len(), 68);
    assert_eq!(t.steps[0].label.as_deref(), Some("f_3"));
    assert_eq!(t.steps[0].index, 1);
    assert_eq!(t.steps[67].colors, "R".repeat(18));
    assert_eq!(t.initial_colors.as_deref(), Some("G".repeat(18).as_str()));
    let snaps = t.snapshots.unwrap();
    assert_eq!(snaps.len(), 68);
    let (last, _) = snaps[67].to_quiver().unwrap();
    assert!(last.color_vector().unwrap().iter().all(|c| !c.is_green()));
}

#[test]
fn trace_without_snapshots() {
    let t: TraceDocument = serde_json::from_str(&stdout(&mgs(&["trace", "--torus", "3", "--cycle-lemma"]))).unwrap();
    assert_eq!(t.steps.len(), 4);
    assert!(t.snapshots.is_none());
}

#[test]
fn mutate_single_step() {
    let o = mgs(&["mutate", "--torus", "3", "--vertex", "f_3"]);
    assert_eq!(o.status.code(), Some(0));
    let (q, labels) = deserialize_labeled(&stdout(&o)).unwrap();
    let f3 = labels.unwrap().index("f_3").unwrap();
    assert!(!q.vertex_color(f3).unwrap().is_green());

    let path = scratch("after-f3.json", &stdout(&o));
    let o = mgs(&["mutate", path.to_str().unwrap(), "--vertex", "f_3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = mgs(&["mutate", path.to_str().unwrap(), "--vertex", "f_3", "--unrestricted"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(deserialize(&stdout(&o)).unwrap(), TorusFamily::new(3).unwrap().quiver());

    let o = mgs(&["mutate", "--torus", "3", "--vertex", "f'_3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(mgs(&["build", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(mgs(&["check", "--torus", "3"]).status.code(), Some(2));
    assert_eq!(mgs(&["check", "--torus", "3", "--cycle", "3", "--theorem"]).status.code(), Some(2));
    assert_eq!(mgs(&[]).status.code(), Some(2));
    let o = mgs(&["check", "/nonexistent/q.json", "--cycle-lemma"]);
    assert_eq!(o.status.code(), Some(2));
}

fn http_get(addr: &str, path: &str) -> String {
    let mut s = TcpStream::connect(addr).unwrap();
    write!(s, "GET {path} HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\n\r\n").unwrap();
    let mut out = String::new();
    s.read_to_string(&mut out).unwrap();
    out
}

#[test]
fn serve_on_os_assigned_port() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mgs"))
        .args(["serve", "--port", "0"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let addr = line.trim().strip_prefix("listening on http://").unwrap().to_string();
    assert!(!addr.ends_with(":0"));
    let index = http_get(&addr, "/");
    assert!(index.starts_with("HTTP/1.1 200"));
    let meta = http_get(&addr, "/api/meta/sequences?n=3");
    assert!(meta.starts_with("HTTP/1.1 200"));
    assert!(meta.contains("\"theorem\""));
    child.kill().unwrap();
    child.wait().unwrap();
}

#[test]
fn serve_on_occupied_port_fails() {
    let taken = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let o = mgs(&["serve", "--port", &port]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}
