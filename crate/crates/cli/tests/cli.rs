use std::process::{Command, Output};

use kron_core::{build_matrix, VpfMatrix};
use serde_json::Value;

fn kron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kron"))
        .args(args)
        .env_remove("KRON_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_wall(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_ms");
    v
}

const EXAMPLE: [&str; 11] = [
    "compute", "--m", "2", "--n", "4", "--lambda", "6,4,4,1", "--mu", "12,3", "--nu", "5,4,3,3",
];

#[test]
fn compute_reports_coefficient_as_string() {
    let v = json(&kron(&EXAMPLE));
    assert_eq!(v["g"], "4");
    for key in ["m", "n", "lambda", "mu", "nu", "terms_evaluated", "terms_skipped", "wall_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["lambda"], "6,4,4,1,0,0,0,0");
    let total = v["terms_evaluated"].as_u64().unwrap() + v["terms_skipped"].as_u64().unwrap();
    assert_eq!(total, 40320);
}

#[test]
fn atomic_example() {
    let v = json(&kron(&[
        "atomic", "--m", "2", "--n", "3", "--lambda", "12,7,4,1", "--mu", "12,12", "--nu", "12,12",
    ]));
    assert_eq!(v["atomic"], "8793");
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let one = json(&kron(&[&["--threads", "1"], &EXAMPLE[..]].concat()));
    let many = json(&kron(&[&["--threads", "6"], &EXAMPLE[..]].concat()));
    assert_eq!(without_wall(one), without_wall(many));
}

#[test]
fn bad_part_names_the_flag() {
    let out = kron(&["compute", "--m", "2", "--n", "2", "--lambda", "2,x", "--mu", "2", "--nu", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--lambda"));
}

#[test]
fn usage_and_size_errors_exit_one() {
    let out = kron(&["compute", "--m", "2", "--n", "2", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kron(&["compute", "--m", "2", "--n", "2", "--lambda", "3", "--mu", "2", "--nu", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kron(&["compute", "--m", "2", "--n", "2", "--lambda", "1,1,1", "--mu", "3", "--nu", "3"]);
    assert!(out.status.success());
}

#[test]
fn resource_guard_exits_two() {
    let out = kron(&["compute", "--m", "4", "--n", "4", "--lambda", "1", "--mu", "1", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kron(&["feasible-set", "--m", "3", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert!(kron(&["--help"]).status.success());
}

#[test]
fn bounds_table_marks_smallest() {
    let args = [
        "bounds", "--m", "3", "--n", "3", "--lambda", "15,15,15,10,10,10,10,10,5", "--mu", "35,35,30",
        "--nu", "40,30,30",
    ];
    let v = json(&kron(&args));
    assert_eq!(v["best"], "factorial-binomial");
    let entries = v["bounds"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["value"].is_string()));
    let out = kron(&[&args[..], &["--output-format", "table"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    let marked: Vec<&str> = text.lines().filter(|l| l.ends_with('*')).collect();
    assert_eq!(marked.len(), 1);
    assert!(marked[0].starts_with("factorial-binomial"));
    assert!(text.contains("5.38e45"));
}

#[test]
fn ressayre_flags_a_nonzero_coefficient() {
    let v = json(&kron(&[
        "vanish", "--m", "2", "--n", "4", "--lambda", "1,1,1,1", "--mu", "2,2", "--nu", "2,2",
        "--ressayre-e", "1", "--ressayre-f", "3",
    ]));
    assert_eq!(v["ressayre"]["predicts_zero"], true);
    assert_eq!(v["report"]["conclusion"], "MayBeNonzero");
    let g = json(&kron(&["compute", "--m", "2", "--n", "4", "--lambda", "1,1,1,1", "--mu", "2,2", "--nu", "2,2"]));
    assert_eq!(g["g"], "1");
}

#[test]
fn stable_triple_example() {
    let v = json(&kron(&["stable-triple", "--m", "2", "--n", "3", "--lambda", "10,8,5,3,2,2"]));
    assert_eq!((v["mu"].as_str(), v["nu"].as_str()), (Some("18,12"), Some("18,7,5")));
    assert_eq!(v["report"]["g"], "1");
    assert_eq!(v["report"]["atomic"], "1");
    assert_eq!(v["report"]["on_face"], true);
}

#[test]
fn stability_sequence_example() {
    let v = json(&kron(&[
        "stability-seq", "--m", "2", "--n", "3", "--lambda", "34,27,20,12,4,3", "--mu", "70,30", "--nu",
        "43,39,18", "--d-lambda", "10,8,5,3,2,2", "--d-mu", "18,12", "--d-nu", "18,7,5", "--k-max", "2",
    ]));
    let seq: Vec<&str> = v["g"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(seq, ["2566", "18028", "36174"]);
}

#[test]
fn poset_of_seven_terms() {
    let v = json(&kron(&["poset", "--m", "2", "--n", "2", "--restrict", "1234 1324 2134 1243 1342 2143 3124"]));
    assert_eq!(v["maximal"], serde_json::json!(["1234"]));
    let below_id: Vec<&str> = v["covers"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c[0] == "1234")
        .map(|c| c[1].as_str().unwrap())
        .collect();
    assert_eq!(below_id, ["1243", "1324", "2134"]);
}

#[test]
fn feasible_set_two_by_two() {
    let v = json(&kron(&["feasible-set", "--m", "2", "--n", "2"]));
    let perms = v["permutations"].as_array().unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, perms.len());
    for p in ["1234", "1324", "2134", "1243", "1342", "2143", "3124"] {
        assert!(perms.iter().any(|q| q == p), "{p}");
    }
}

#[test]
fn matrix_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (m, n, rows, cols) in [(2, 3, 3, 11), (2, 4, 4, 21), (3, 3, 4, 30)] {
        let path = dir.path().join(format!("a{m}{n}.txt"));
        let v = json(&kron(&["matrix", "--m", &m.to_string(), "--n", &n.to_string(), "--path", path.to_str().unwrap()]));
        assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(rows), Some(cols)));
        let back = VpfMatrix::read_file(&path).unwrap();
        assert_eq!(back, build_matrix(m, n).unwrap());
        assert_eq!(std::fs::read_to_string(&path).unwrap(), back.to_text());
    }
    let out = kron(&["matrix", "--m", "2", "--n", "3", "--path", "/nonexistent/dir/a.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/dir/a.txt"));
}

#[test]
fn cache_directory_persists_memos() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "--m", "2", "--n", "3", "--lambda", "12,7,4,1", "--mu", "12,12", "--nu", "12,12"];
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_kron"))
            .args(args)
            .env("KRON_CACHE_DIR", dir.path())
            .output()
            .unwrap();
        without_wall(json(&out))
    };
    let first = run();
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    assert_eq!(first, run());
    assert_eq!(first, without_wall(json(&kron(&args))));
}

#[test]
fn quick_reproduction_table() {
    let out = kron(&["reproduce-paper", "--quick", "--output-format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  g (6,4,4,1),(12,3),(5,4,3,3)"));
    let rows: Vec<Value> = serde_json::from_slice(&kron(&["reproduce-paper", "--quick"]).stdout).unwrap();
    let failed: Vec<&str> = rows
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["bound factorial-binomial"]);
}
