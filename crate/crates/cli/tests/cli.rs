use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pdcrank(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdcrank"))
        .args(args)
        .env("CRANK_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn series_examples() {
    let dir = TempDir::new().unwrap();
    let csv = |args: &[&str]| {
        let mut all = vec!["--format", "csv"];
        all.extend_from_slice(args);
        stdout(&pdcrank(dir.path(), &all))
    };
    assert_eq!(csv(&["series", "PD", "--order", "5"]), "1,1,3,5,10,15\n");
    assert_eq!(csv(&["series", "RESID2", "--order", "2"]), "1,-2,3\n");
    assert_eq!(csv(&["series", "M201", "--order", "5"]), "1,-1,0,0,1,0\n");
    assert_eq!(
        csv(&["series", "mainf2", "-N", "12"]),
        "1,-1,1,0,2,-1,4,-1,6,0,8,0,15\n"
    );
    assert_eq!(csv(&["series", "GFUN1", "0", "-N", "2"]), "1,-2,3\n");
}

#[test]
fn table_examples() {
    let dir = TempDir::new().unwrap();
    let csv = |args: &[&str]| {
        let mut all = vec!["--format", "csv"];
        all.extend_from_slice(args);
        stdout(&pdcrank(dir.path(), &all))
    };
    assert_eq!(
        csv(&["table", "pdcrank", "--order", "2"]),
        "1\n1,0,1\n1,1,3,1,1\n"
    );
    assert_eq!(csv(&["table", "crank", "--order", "1"]), "1\n1,-1,1\n");
    assert_eq!(
        csv(&["table", "kcrank", "2", "--order", "2"]),
        "1\n1,0,1\n1,1,1,1,1\n"
    );
}

#[test]
fn json_uses_decimal_strings() {
    let dir = TempDir::new().unwrap();
    let out = stdout(&pdcrank(
        dir.path(),
        &["--format", "json", "series", "PD2", "-N", "60"],
    ));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["id"], "PD2");
    assert_eq!(v["order"], 60);
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 61);
    assert!(coeffs.iter().all(|c| c.is_string()));

    let out = stdout(&pdcrank(
        dir.path(),
        &["--format", "json", "table", "pdcrank", "-N", "2"],
    ));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["statistic"], "pdcrank");
    assert_eq!(v["rows"][2], serde_json::json!(["1", "1", "3", "1", "1"]));
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["series", "BOGUS"][..],
        &["series", "GFUN1"],
        &["series", "PD", "3"],
        &["table", "kcrank"],
        &["table", "kcrank", "0"],
        &["table", "rank"],
        &["verify", "BOGUS"],
        &["verify"],
        &["verify", "T24", "--all"],
        &["--format", "xml", "series", "PD"],
        &["--order", "-3", "series", "PD"],
    ] {
        let out = pdcrank(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["series", "PD2", "-N", "80"][..],
        &["series", "GFUN2", "2", "-N", "40"],
        &["table", "pdcrank", "-N", "40"],
        &["--format", "csv", "table", "kcrank", "3", "-N", "30"],
    ] {
        let cold = stdout(&pdcrank(dir.path(), args));
        let warm = stdout(&pdcrank(dir.path(), args));
        let mut uncached = args.to_vec();
        uncached.push("--no-cache");
        let fresh = stdout(&pdcrank(dir.path(), &uncached));
        assert_eq!(cold, warm, "{args:?}");
        assert_eq!(cold, fresh, "{args:?}");
    }
    let entry = dir.path().join("v1").join("table-pdcrank-40.txt");
    let text = std::fs::read_to_string(entry).unwrap();
    assert!(text.starts_with("# pdcrank table key=pdcrank order=40 version=1\n"));
    assert_eq!(text.lines().count(), 42);
}

#[test]
fn cache_entries_are_used_and_repaired() {
    let dir = TempDir::new().unwrap();
    let args = ["--format", "csv", "series", "PD", "-N", "3"];
    assert_eq!(stdout(&pdcrank(dir.path(), &args)), "1,1,3,5\n");
    let entry = dir.path().join("v1").join("series-PD-3.txt");

    // a well-formed entry is served as is
    std::fs::write(
        &entry,
        "# pdcrank series key=PD order=3 version=1\n1\n1\n3\n6\n",
    )
    .unwrap();
    assert_eq!(stdout(&pdcrank(dir.path(), &args)), "1,1,3,6\n");

    // unreadable, mislabelled or stale-version entries are recomputed
    for bad in [
        "garbage",
        "# pdcrank series key=PD2 order=3 version=1\n1\n1\n3\n6\n",
        "# pdcrank series key=PD order=3 version=0\n1\n1\n3\n6\n",
    ] {
        std::fs::write(&entry, bad).unwrap();
        assert_eq!(stdout(&pdcrank(dir.path(), &args)), "1,1,3,5\n");
        assert!(std::fs::read_to_string(&entry)
            .unwrap()
            .ends_with("\n3\n5\n"));
    }
}

#[test]
fn no_cache_writes_nothing() {
    let dir = TempDir::new().unwrap();
    stdout(&pdcrank(
        dir.path(),
        &["--no-cache", "series", "PD", "-N", "5"],
    ));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn cache_dir_flag_overrides_environment() {
    let env_dir = TempDir::new().unwrap();
    let flag_dir = TempDir::new().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    stdout(&pdcrank(
        env_dir.path(),
        &["--cache-dir", flag, "series", "PD", "-N", "5"],
    ));
    assert!(flag_dir.path().join("v1").join("series-PD-5.txt").exists());
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
}

#[test]
fn verify_all_at_60_writes_report() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.jsonl");
    let out = pdcrank(
        dir.path(),
        &[
            "verify",
            "--all",
            "--order",
            "60",
            "--jobs",
            "4",
            "--report",
            report.to_str().unwrap(),
        ],
    );
    let text = stdout(&out);
    assert!(text.ends_with("22 of 22 checks passed\n"), "{text}");
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&report)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 22);
    assert_eq!(lines[0]["id"], "T24");
    for rec in &lines {
        assert_eq!(rec["status"], "pass");
        assert!(rec["range"].is_string() && rec["millis"].is_u64());
        assert!(rec.get("counterexample").is_none());
    }
}

#[test]
fn verify_t41_lists_exceptions() {
    let dir = TempDir::new().unwrap();
    let out = stdout(&pdcrank(dir.path(), &["verify", "T41", "--order", "10"]));
    for at in ["(1,1)", "(1,5)", "(1,7)"] {
        assert!(out.contains(&format!("exception (m,n)={at}")), "{out}");
    }
    let out = stdout(&pdcrank(
        dir.path(),
        &["--format", "json", "verify", "t41", "i3", "-N", "10"],
    ));
    let recs: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs[0]["id"], "T41");
    assert_eq!(recs[1]["id"], "I3");
    assert_eq!(recs[0]["details"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_csv_has_header() {
    let dir = TempDir::new().unwrap();
    let out = stdout(&pdcrank(
        dir.path(),
        &["--format", "csv", "verify", "UNI", "-N", "30"],
    ));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("id,range,order,status,at,values,millis"));
    assert!(lines.next().unwrap().starts_with("UNI,"));
}

#[test]
fn text_series_is_columnar() {
    let dir = TempDir::new().unwrap();
    let out = stdout(&pdcrank(dir.path(), &["series", "RESID2", "-N", "10"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["2", "3"]);
    assert!(lines.iter().all(|l| l.len() == lines[0].len()));
}
