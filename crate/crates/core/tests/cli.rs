use std::path::PathBuf;

use gwcx::cli::{default_corpus_dir, run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn corpus(name: &str) -> String {
    default_corpus_dir().join(name).to_string_lossy().into_owned()
}

fn temp_file(name: &str, text: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("gwcx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn reduce_shifted_hyperbolic() {
    let o = run(["gwcx", "reduce", &corpus("h_shift1.form")]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert!(o.report.contains("step n=1: dims [1 0 1] -> enlarged [1 2 1] -> [0 0 0]"));
    assert!(o.report.contains("hyperbolic: -H(1)"));
    assert!(o.report.contains("ledger: - [H(1)[0]]"));
}

#[test]
fn invariants_of_arf_plane() {
    let o = run(["gwcx", "invariants", &corpus("arf1.form")]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert!(o.report.contains("invariants: rank 2, arf 1"));
}

#[test]
fn witt_table_f3() {
    let o = run(["gwcx", "witt-table", "--field", "3", "--max-rank", "4"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert!(o.report.contains("order 4\n"));
    assert!(o.report.contains("class 1: [1] [rank 1, disc nonsquare] order 4"));
    // nonsingular symmetric n x n matrices over F_q: q^{m(m+1)} prod_{i <= ceil(n/2)} (q^{2i-1} - 1), m = floor(n/2)
    let count = |n: u32| {
        let (q, m) = (3u64, n / 2);
        q.pow(m * (m + 1)) * (1..=n.div_ceil(2)).map(|i| q.pow(2 * i - 1) - 1).product::<u64>()
    };
    for n in 1..=4u32 {
        let line = format!("rank {n}: {} nondegenerate forms classified of {} (exhaustive)", count(n), 3u64.pow(n * (n + 1) / 2));
        assert!(o.report.contains(&line), "{line}");
    }
    assert!(o.report.contains("group: true"));
}

#[test]
fn quis_compares_classes() {
    let o = run(["gwcx", "quis", &corpus("metabolic_f5.form"), &corpus("metabolic_wide_f5.form")]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert!(o.report.contains("equal classes: yes"));
    let o = run(["gwcx", "quis", &corpus("one_f3.form"), &corpus("h_shift1.form")]);
    assert_eq!(o.code, EXIT_FAIL, "{}", o.report);
    assert!(o.report.contains("quasi-isomorphic: no"));
}

#[test]
fn relations_and_axioms_small() {
    let o = run(["gwcx", "verify-relations", "--trials", "20", "--seed", "3"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert_eq!(o.report.lines().filter(|l| l.starts_with("PASS")).count(), 13);
    let o = run(["gwcx", "axioms", "--trials", "20", "--complexes", "10"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert_eq!(o.report.lines().filter(|l| l.starts_with("PASS")).count(), 28);
}

#[test]
fn reports_are_deterministic() {
    let args = ["gwcx", "verify-relations", "--trials", "15", "--field", "5", "--seed", "9"];
    assert_eq!(run(args), run(args));
}

#[test]
fn exit_codes() {
    let wrong = temp_file("wrong.form", "format gwcx/1\nfield F3\nparam quadratic +1\nkind qspace\nmatrix xi 1 1\n1\nexpect rank 2\n");
    let o = run(["gwcx", "invariants", &wrong]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.report.contains("expect rank = 2: FAIL (computed 1)"));

    let broken = temp_file("broken.form", "format gwcx/1\nfield F3\nparam quadratic +1\nkind qspace\nmatrix xi 1 1\nz\n");
    let o = run(["gwcx", "invariants", &broken]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.report.contains("line 6, column 1"));

    let degenerate = temp_file("degenerate.form", "format gwcx/1\nfield F3\nparam quadratic +1\nkind qspace\nmatrix xi 1 1\n0\n");
    assert_eq!(run(["gwcx", "invariants", &degenerate]).code, EXIT_FAIL);

    let complex = temp_file("complex.form", "format gwcx/1\nfield F3\nparam quadratic +1\nkind complex\nwindow 0 0\ndims 1\n");
    assert_eq!(run(["gwcx", "reduce", &complex]).code, EXIT_USAGE);
    assert_eq!(run(["gwcx", "corpus-check", "/nonexistent-dir"]).code, EXIT_USAGE);
    assert_eq!(run(["gwcx"]).code, EXIT_USAGE);
}
