use std::fs;
use std::path::PathBuf;
use std::process::Command;

use rvd_cli::{run, CommandOutcome, EXIT_CAP, EXIT_FAILED, EXIT_INPUT, EXIT_OK};
use tempfile::TempDir;

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn rvd(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("rvd").chain(args.iter().copied()))
}

fn value<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().rev().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

const PATH5: &str = "5 4\n1 2\n2 3\n3 4\n4 5\n";
const C6: &str = "6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
const K3: &str = "3 3\n1 2\n2 3\n1 3\n";
const K4: &str = "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn exact_on_a_path() {
    let f = Files::new();
    let out = rvd(&["exact", &f.put("p5.el", PATH5)]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(value(&out.report, "rvd"), Some("1"));
    assert!(out.report.contains("# witness\n1 1\n"));
}

#[test]
fn verify_rejects_monochromatic_cycle() {
    let f = Files::new();
    let g = f.put("c6.el", C6);
    let bad = f.put("bad.col", "1 1\n2 1\n3 1\n4 1\n5 1\n6 1\n");
    let out = rvd(&["verify", &g, &bad]);
    assert_eq!(out.exit_code, EXIT_FAILED);
    assert_eq!(value(&out.report, "failing_pair"), Some("1 2"));

    let good = f.put("good.col", "1 1\n2 1\n3 2\n4 2\n5 1\n6 1\n");
    let out = rvd(&["verify", &g, &good, "--witnesses"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.report);
    assert_eq!(value(&out.report, "verdict"), Some("accepted"));
}

#[test]
fn colorer_output_verifies() {
    let f = Files::new();
    let g = f.put("c6.el", C6);
    let out = rvd(&["color-k4mf", &g, "--trace", "--dot"]);
    assert_eq!(out.exit_code, EXIT_OK);
    let coloring: String = out.report.lines().skip(1).take(6).map(|l| format!("{l}\n")).collect();
    let col = f.put("out.col", &coloring);
    assert_eq!(rvd(&["verify", &g, &col]).exit_code, EXIT_OK);
    assert!(out.report.contains("graph"));

    let out = rvd(&["color-k4mf", &f.put("k4.el", K4)]);
    assert_eq!(out.exit_code, EXIT_INPUT);
}

#[test]
fn gadget_writes_edges_and_roles() {
    let f = Files::new();
    let g = f.put("k3.el", K3);
    let out = rvd(&["gadget", "--kind", "split", &g]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(value(&out.report, "vertices"), Some("12"));
    assert!(out.report.contains("# edges\n12 54\n"));
    assert!(out.report.contains("4 s 1-2\n"));

    let target = f.path("h.el");
    let out = rvd(&["gadget", "--kind", "bipartite", "--replicate", "3", &g, "--out", target.to_str().unwrap()]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(value(&out.report, "vertices"), Some("21"));
    let edges = fs::read_to_string(&target).unwrap();
    assert!(edges.starts_with("21 "));
    let roles = fs::read_to_string(f.path("h.el.roles")).unwrap();
    assert_eq!(roles.lines().count(), 21);
    assert!(roles.starts_with("1 orig 1@1\n"));
}

#[test]
fn roundtrip_and_chain_reports() {
    let f = Files::new();
    let k2 = f.put("k2.el", "2 1\n1 2\n");
    for (k, le) in [("1", "false"), ("2", "true")] {
        let out = rvd(&["roundtrip", &k2, "--kind", "bipartite", "-k", k]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(value(&out.report, "chi_le_k"), Some(le));
        assert_eq!(value(&out.report, "rvd_le_threshold"), Some(le));
        assert_eq!(value(&out.report, "gadget_rvd"), Some("4"));
    }
    let out = rvd(&["chain", &k2, "--kind", "split", "-k", "2"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.report);
    assert_eq!(value(&out.report, "status"), Some("pass"));
}

#[test]
fn bounds_and_recognize() {
    let f = Files::new();
    let out = rvd(&["bounds", &f.put("c6.el", C6)]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(value(&out.report, "lower"), Some("2"));
    let out = rvd(&["recognize", &f.put("k4.el", K4)]);
    assert_eq!(value(&out.report, "k4_minor_free"), Some("false"));
}

#[test]
fn error_exit_codes() {
    let f = Files::new();
    assert_eq!(rvd(&["frobnicate"]).exit_code, EXIT_INPUT);
    assert_eq!(rvd(&["exact", "/nonexistent/graph.el"]).exit_code, EXIT_INPUT);
    assert_eq!(rvd(&["exact", &f.put("bad.el", "3 2\n1 2\n")]).exit_code, EXIT_INPUT);
    assert_eq!(rvd(&["exact", &f.put("k3.el", K3), "--cap", "2"]).exit_code, EXIT_CAP);
    assert_eq!(rvd(&["gadget", "--kind", "split", &f.put("e.el", "2 0\n")]).exit_code, EXIT_INPUT);
}

#[test]
fn output_is_deterministic() {
    let f = Files::new();
    let g = f.put("c6.el", C6);
    for args in [["color-k4mf", g.as_str(), "--trace"], ["exact", g.as_str(), "--dot"]] {
        assert_eq!(rvd(&args), rvd(&args));
    }
}

#[test]
fn binary_reports_exit_codes() {
    let f = Files::new();
    let g = f.put("c6.el", C6);
    let bad = f.put("bad.col", "1 1\n2 1\n3 1\n4 1\n5 1\n6 1\n");
    let out = Command::new(env!("CARGO_BIN_EXE_rvd")).args(["verify", &g, &bad]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_FAILED));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict=rejected"));
    let out = Command::new(env!("CARGO_BIN_EXE_rvd")).args(["exact", &g]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn selftest_passes() {
    let out = rvd(&["selftest", "--seed", "7"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.report);
    assert_eq!(out.report.lines().filter(|l| l.contains(" pass ")).count(), 12);
    assert_eq!(value(&out.report, "failed"), Some("0"));
}
