use std::path::Path;
use std::process::{Command, Output};

use seqopt::numbers::{build_table, stirling_u, SeqOptTable};

const TABLE_K2: &str = include_str!("../../core/tests/data/table_k2.tsv");
const TABLE_K3: &str = include_str!("../../core/tests/data/table_k3.tsv");
const DIAMOND: &str = "2 4 directed\n0 1 1 3\n1 3 1 3\n0 2 2 1\n2 3 2 1\n";

fn seqopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqopt")).args(args).env_remove("SEQOPT_ENUM_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn tables_match_published_layout() {
    assert_eq!(stdout(&seqopt(&["table", "--k", "2", "--n", "6"])), TABLE_K2);
    assert_eq!(stdout(&seqopt(&["table", "--k", "3", "--n", "6"])), TABLE_K3);
    let k1 = stdout(&seqopt(&["table", "--k", "1", "--n", "5"]));
    assert_eq!(SeqOptTable::parse_tsv(1, &k1).unwrap(), stirling_u(5));
    let bfile = stdout(&seqopt(&["table", "--k", "2", "--n", "8", "--format", "bfile"]));
    assert_eq!(SeqOptTable::parse_bfile(2, &bfile).unwrap(), build_table(2, 8));
}

#[test]
fn json_output_parses() {
    let o = seqopt(&["--json", "table", "--k", "2", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][3][2], "17");
    let o = seqopt(&["--json", "verify", "--suite", "poly", "--k", "2", "--n", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_examples() {
    let o = seqopt(&["verify", "--suite", "oracle", "--k", "2", "--n", "4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = seqopt(&["verify", "--suite", "bounds", "--k", "1", "--n", "30"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = seqopt(&["verify", "--suite", "lemmas", "--which", "opt-numbers", "--n", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS lemmas/opt-numbers"));
}

#[test]
fn verify_failures_and_budgets() {
    let o = seqopt(&["verify", "--suite", "poly", "--which", "stated-roots", "--k", "2", "--n", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL poly/stated-roots"));
    let o = Command::new(env!("CARGO_BIN_EXE_seqopt"))
        .args(["verify", "--suite", "oracle", "--k", "2", "--n", "5"])
        .env("SEQOPT_ENUM_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(code(&seqopt(&["verify", "--which", "no-such-check"])), 2);
}

#[test]
fn solve_examples() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "diamond.txt", DIAMOND);
    let o = seqopt(&["solve", "--graph", &g, "--query", "0 3 3 7", "--frontier"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "YES\npath 0 -> 1 -> 3\nlabel 2 6\nfrontier 2\n2 6\n4 2\n");
    let o = seqopt(&["solve", "--graph", &g, "--query", "0 3 3 2"]);
    assert_eq!((code(&o), stdout(&o)), (0, "NO\n".to_string()));
    let o = seqopt(&["solve", "--graph", &g, "--query", "0 3 3 7", "--variant", "exactly"]);
    assert!(stdout(&o).starts_with("YES\npath 0 -> 1 -> 3\n"));
}

#[test]
fn solve_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "diamond.txt", DIAMOND);
    let bad = write(dir.path(), "bad.txt", "2 4 directed\n0 1 1 3\n1 3 1\n");
    let o = seqopt(&["solve", "--graph", &bad, "--query", "0 3 3 7"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert!(o.stdout.is_empty());
    let o = seqopt(&["solve", "--graph", &g, "--query", "0 3 3"]);
    assert_eq!(code(&o), 4);
    assert_eq!(code(&seqopt(&["solve", "--graph", &g, "--query", "0 9 3 7"])), 2);
    assert_eq!(code(&seqopt(&["solve", "--graph", "/nonexistent", "--query", "0 3 3 7"])), 2);
}

#[test]
fn paths_enumerates_the_front() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "diamond.txt", DIAMOND);
    assert_eq!(stdout(&seqopt(&["paths", "--graph", &g, "--s", "0", "--t", "3"])), "2 6\n4 2\n");
    assert_eq!(code(&seqopt(&["paths", "--graph", &g, "--s", "0", "--t", "3", "--limit", "3"])), 3);
}

#[test]
fn simulate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(format!("{name}.csv"));
        let report = dir.path().join(name);
        let mut args = vec!["simulate", "--out", out.to_str().unwrap(), "--report", report.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = seqopt(&args);
        (o, std::fs::read_to_string(out).unwrap_or_default())
    };
    let base = ["--topology", "complete", "--n", "10", "--k", "2", "--trials", "5", "--seed", "7"];
    let (a, csv_a) = run("a", &base);
    let (_, csv_b) = run("b", &base);
    assert_eq!(code(&a), 0);
    assert_eq!(csv_a, csv_b);
    assert_eq!(csv_a.lines().count(), 2 + 5 * 9);
    assert!(stdout(&a).contains("c_fit="));
    assert!(dir.path().join("a.json").exists() && dir.path().join("a.txt").exists());
    let (k1, _) = run("k1", &["--k", "1", "--n", "8", "--trials", "3"]);
    assert!(stdout(&k1).contains("max_p_e=1\n"));
    let (gnp, _) = run("gnp", &["--topology", "gnp", "--p", "1.5"]);
    assert_eq!(code(&gnp), 2);
}

#[test]
fn simulate_reads_config_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"k":2,"n":6,"topology":{"kind":"layered","width":2},"weight_model":{"kind":"random_permutation"},"trials":2,"seed":3}"#,
    );
    let out = dir.path().join("o.csv");
    let report = dir.path().join("o");
    let o = seqopt(&["--json", "simulate", "--config", &cfg, "--trials", "4", "--out", out.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trials"], 4);
    let bad = write(dir.path(), "bad.json", r#"{"k":2}"#);
    assert_eq!(code(&seqopt(&["simulate", "--config", &bad])), 2);
}

#[test]
fn numeric_subcommands() {
    assert_eq!(stdout(&seqopt(&["explicit", "--k", "2", "--n", "6", "--m", "2"])), "86836\n");
    assert_eq!(stdout(&seqopt(&["--jobs", "2", "explicit", "--k", "3", "--n", "6", "--m", "4"])), "137868205\n");
    assert_eq!(stdout(&seqopt(&["poly", "--k", "2", "--n", "3"])), "0\t4\t17\t15\n");
    assert_eq!(stdout(&seqopt(&["poly", "--k", "2", "--n", "3", "--signed"])), "0\t4\t-17\t15\n");
    assert_eq!(stdout(&seqopt(&["harmonic", "--i", "2", "--n", "3"])), "49/36\n");
    assert_eq!(stdout(&seqopt(&["bound", "--k", "2", "--n", "2", "--m", "2"])), "3\n");
    assert_eq!(code(&seqopt(&["roots", "--k", "2", "--n", "4"])), 0);
    assert_eq!(code(&seqopt(&["roots", "--k", "2", "--n", "4", "--stated"])), 1);
    assert!(stdout(&seqopt(&["threshold", "--k", "2", "--n", "11", "--m1", "5"])).contains("threshold=31\n"));
    assert_eq!(code(&seqopt(&["tail", "--k", "2", "--n", "6", "--m1", "2"])), 0);
    assert_eq!(code(&seqopt(&["ratio", "--k", "1", "--n", "5"])), 0);
    assert_eq!(code(&seqopt(&["bad-case", "--eta", "50", "--mu", "2", "--m1r", "3"])), 0);
    assert_eq!(code(&seqopt(&["bad-case", "--eta", "50", "--mu", "1", "--m1r", "3"])), 2);
    assert_eq!(stdout(&seqopt(&["brute", "--k", "2", "--n", "4"])), "0\t36\t181\t254\t105\n");
    assert_eq!(code(&seqopt(&["brute", "--k", "2", "--n", "6", "--budget", "1000"])), 3);
    assert_eq!(code(&seqopt(&["table", "--k", "two", "--n", "3"])), 2);
}
