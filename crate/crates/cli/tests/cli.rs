use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mincodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mincodes"))
        .args(args)
        .env_remove("MINCODES_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

#[test]
fn table_single_q() {
    let o = mincodes(&["bounds", "table", "--q-list", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("q,delta_star,rate_star,liminf_ratio"));
    assert!(lines.next().unwrap().ends_with(",3.527627"));
    assert!(out.contains("q,liminf_ratio,liminf_minus_q,epsilon_proof\n2,3.527627,1.527627,1.520445\n"));
}

#[test]
fn table_json_has_both_tables() {
    let o = mincodes(&["bounds", "table", "--q-list", "2,3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["liminf"].as_array().unwrap().len(), 2);
    assert_eq!(v["epsilon_gap"][1]["q"], 3);
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["bounds", "table", "--q-list", "6"],
        vec!["bounds", "table", "--q-list", "2", "--tolerance", "0.5"],
        vec!["bounds", "epsilon", "--q", "1"],
        vec!["bounds", "curves", "--q", "2", "--grid", "1"],
        vec!["search", "--N", "0"],
        vec!["search", "--N", "13"],
        vec!["search", "--N", "3", "--threads", "0"],
        vec!["check", "--matrix", "/nonexistent/matrix.txt"],
        vec!["bounds", "table", "--q-list", "2", "--format", "xml"],
    ] {
        assert_eq!(code(&mincodes(&args)), 2, "{args:?}");
    }
}

#[test]
fn search_exit_codes() {
    let o = mincodes(&["search", "--N", "6"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["outcome"], "exhausted");

    let o = mincodes(&["search", "--N", "5"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["outcome"], "found");
    let rows = v["generator"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.as_str().unwrap().len() == 15));

    let o = mincodes(&["search", "--N", "4"]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert!(v["pruned_by"]["parity"].as_u64().unwrap() > 0);
    assert_eq!(v["nodes"], 0);
    assert!(v["generator"].is_null());
}

#[test]
fn certificate_schema() {
    let v = json(&mincodes(&["search", "--N", "3"]));
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["N", "assumptions", "elapsed_s", "generator", "nodes", "outcome", "pruned_by", "version"]);
    let mut prune: Vec<&str> = v["pruned_by"].as_object().unwrap().keys().map(String::as_str).collect();
    prune.sort_unstable();
    assert_eq!(prune, ["pairwise", "parity", "structure", "weight"]);
    assert!(v["elapsed_s"].is_f64());
    assert!(v["assumptions"].as_array().unwrap().iter().all(|a| a.is_string()));
}

#[test]
fn repeated_runs_match_except_elapsed() {
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.contains("\"elapsed_s\"")).collect::<Vec<_>>().join("\n");
    let a = mincodes(&["search", "--N", "7"]);
    let b = mincodes(&["search", "--N", "7", "--threads", "3"]);
    assert_eq!(strip(&a), strip(&b));
    let t1 = mincodes(&["bounds", "table", "--q-list", "2,3,4,5,7,8"]);
    let t2 = mincodes(&["bounds", "table", "--q-list", "2,3,4,5,7,8"]);
    assert_eq!(t1.stdout, t2.stdout);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_reports() {
    let dir = tempfile::tempdir().unwrap();
    let simplex = write(dir.path(), "simplex.txt", "# [7,3] simplex\n2 3 7\n1010101\n0110011\n0001111\n");
    let o = mincodes(&["check", "--matrix", &simplex]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("minimal,true\n") && out.contains("d_min,4\n"));
    assert!(out.contains("strong_blocking_set,true\n"));

    let bad = write(dir.path(), "bad.txt", "2 2 3\r\n1 1 0\r\n0 1 0\r\n");
    let o = mincodes(&["check", "--matrix", &bad, "--format", "json"]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["minimal"], false);
    assert_eq!((v["witness_inner"].as_str(), v["witness_outer"].as_str()), (Some("010"), Some("110")));

    let broken = write(dir.path(), "broken.txt", "2 three 7\n");
    assert_eq!(code(&mincodes(&["check", "--matrix", &broken])), 2);
    let big = write(
        dir.path(),
        "big.txt",
        &format!(
            "2 21 21\n{}",
            (0..21)
                .map(|i| {
                    let mut r = vec!['0'; 21];
                    r[i] = '1';
                    r.into_iter().collect::<String>() + "\n"
                })
                .collect::<String>()
        ),
    );
    assert_eq!(code(&mincodes(&["check", "--matrix", &big])), 2);
}

#[test]
fn certify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (n, exit) in [(2, 0), (6, 3)] {
        let o = mincodes(&["search", "--N", &n.to_string()]);
        assert_eq!(code(&o), exit);
        let path = write(dir.path(), &format!("c{n}.json"), &stdout(&o));
        let c = mincodes(&["certify", "--cert", &path]);
        assert_eq!(code(&c), 0, "{}", stdout(&c));
        assert!(stdout(&c).contains("verified,true"));
    }
    let found = stdout(&mincodes(&["search", "--N", "3"]));
    let tampered = found.replacen("\"1000", "\"1001", 1);
    assert_ne!(found, tampered);
    let path = write(dir.path(), "bad.json", &tampered);
    let c = mincodes(&["certify", "--cert", &path, "--format", "json"]);
    assert_eq!(code(&c), 3);
    assert_eq!(json(&c)["verified"], false);
    let path = write(dir.path(), "junk.json", "{\"N\": 3}");
    assert_eq!(code(&mincodes(&["certify", "--cert", &path])), 2);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_mincodes")).args(args).env("MINCODES_OUTPUT_DIR", dir.path()).output().unwrap()
    };
    let o = run(&["search", "--N", "5", "--matrix-out", "m5.txt"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("search_N5.json")).unwrap()).unwrap();
    assert_eq!(cert["N"], 5);
    let matrix = fs::read_to_string(dir.path().join("m5.txt")).unwrap();
    assert!(matrix.starts_with("2 6 15\n"));
    let o = run(&["check", "--matrix", dir.path().join("m5.txt").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(fs::read_to_string(dir.path().join("check.csv")).unwrap().contains("d_min,6"));

    assert_eq!(code(&run(&["bounds", "curves", "--q", "3", "--grid", "11", "--output", "sub/c.csv"])), 0);
    let curves = fs::read_to_string(dir.path().join("sub/c.csv")).unwrap();
    assert_eq!(curves.lines().count(), 1 + 11 + 1);
}

#[test]
fn explicit_output_without_directory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eps.json");
    let o = mincodes(&["bounds", "epsilon", "--q", "2,7", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[1]["epsilon"], 1.59508);
}
