mod common;

use std::io::Write;
use std::process::{Command, Output};

use common::bin;

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn cli")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sample_golden() {
    let o = run(&["sample", "--n", "100", "--k", "5", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "21\n3\n82\n20\n6\n");

    let o = run(&["sample", "--n", "1000", "--k", "8", "--seed", "2024", "--sorted"]);
    assert_eq!(stdout(&o), "89\n213\n383\n663\n722\n747\n890\n914\n");

    let o = run(&["sample", "--n", "100", "--k", "2", "--seed", "42", "--format", "csv"]);
    assert_eq!(stdout(&o), "index\n21\n3\n");
    let o = run(&["sample", "--n", "100", "--k", "2", "--seed", "42", "--format", "json-lines"]);
    assert_eq!(stdout(&o), "21\n3\n");
}

#[test]
fn sample_modes_print_the_same() {
    for seed in ["1", "99", "123456789"] {
        let a = run(&["sample", "--n", "1000000", "--k", "50", "--seed", seed, "--mode", "faithful"]);
        let b = run(&["sample", "--n", "1000000", "--k", "50", "--seed", seed, "--mode", "pruned"]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn lines_golden() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for i in 0..20 {
        writeln!(f, "line-{i:02}").unwrap();
    }
    f.flush().unwrap();
    let path = f.path().to_str().unwrap();
    let o = run(&["lines", "--file", path, "--k", "4", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "line-00\nline-01\nline-02\nline-04\n");
    let o = run(&["lines", "--file", path, "--k", "1", "--seed", "9", "--format", "json-lines"]);
    assert!(stdout(&o).starts_with("\"line-"));
}

#[test]
fn codes_golden() {
    let o = run(&[
        "codes", "--n", "2176782336", "--k", "5", "--alphabet", "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ", "--width",
        "6", "--seed", "11",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "9ULUOT\nXYSVC1\nUOT5RH\nAVDDRK\nWGULS4\n");
}

#[test]
fn verify_exact_golden() {
    let o = run(&["verify", "--n", "5", "--k", "2", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = "verify n=5 k=2 method=exact sequences=20\n\
                    expected probability k/n = 0.400000\n\
                    index 0: 8/20 = 0.400000\n\
                    index 1: 8/20 = 0.400000\n\
                    index 2: 8/20 = 0.400000\n\
                    index 3: 8/20 = 0.400000\n\
                    index 4: 8/20 = 0.400000\n\
                    distinct subsets: 10\n\
                    verdict: PASS\n";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn verify_trials_pass_and_record() {
    let o = run(&["verify", "--n", "10", "--k", "3", "--trials", "5000", "--seed", "4", "--format", "json-lines"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"]["pass"], true);
    assert_eq!(v["verdict"]["degrees_of_freedom"], 9);
    assert_eq!(v["expected_probability"], 0.3);
}

#[test]
fn verify_failure_exit_code() {
    // A bound far below any realistic deviation forces a failing verdict.
    let o = run(&["verify", "--n", "10", "--k", "3", "--trials", "1000", "--seed", "4", "--sigma", "0.000001"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).ends_with("verdict: FAIL\n"));
}

#[test]
fn bench_csv_shape() {
    let o = run(&[
        "bench", "--methods", "cachediff_pruned,full_index,reservoir", "--n-list", "5,1000", "--k-list", "10",
        "--reps", "3", "--seed", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "method,n,k,repetitions,median_elapsed_ns,peak_entries");
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "cachediff_pruned,5,10,3,skip,");
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&cells[..4], &["cachediff_pruned", "1000", "10", "3"]);
    assert!(cells[4].parse::<u64>().is_ok());
    assert_eq!(cells[5], "10");
    assert!(lines[4].ends_with(",1000"));
    assert!(lines[6].ends_with(",10"));
}

#[test]
fn exit_codes_under_fault_injection() {
    let cases: &[(&[&str], i32)] = &[
        (&["sample", "--n", "1", "--k", "1", "--seed", "7"], 0),
        (&["sample", "--n", "10", "--k", "11"], 1),
        (&["sample", "--n", "ten", "--k", "1"], 1),
        (&["sample"], 1),
        (&["nonsense"], 1),
        (&["lines", "--file", "/no/such/file.txt", "--k", "1", "--seed", "1"], 2),
        (&["codes", "--n", "10", "--k", "2", "--alphabet", "A", "--width", "3", "--seed", "1"], 1),
        (&["codes", "--n", "10", "--k", "2", "--alphabet", "AA", "--width", "3", "--seed", "1"], 1),
        (&["codes", "--n", "10", "--k", "2", "--alphabet", "AB", "--width", "3", "--seed", "1"], 2),
        (&["verify", "--n", "30", "--k", "8", "--exact"], 2),
        (&["verify", "--n", "3", "--k", "4", "--trials", "10", "--seed", "1"], 1),
        (&["bench", "--methods", "vitter_d", "--n-list", "10", "--k-list", "1"], 1),
    ];
    for (args, code) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn seed_echo_on_stderr_only() {
    let o = run(&["sample", "--n", "50", "--k", "3"]);
    let err = String::from_utf8(o.stderr).unwrap();
    let seed = err.trim().strip_prefix("seed: ").expect("seed echoed");
    let replay = run(&["sample", "--n", "50", "--k", "3", "--seed", seed]);
    assert_eq!(o.stdout, replay.stdout);
}
