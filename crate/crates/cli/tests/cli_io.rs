//! End-to-end tests of the binary: output stability, parity between the
//! human and JSON renderings, exit codes, and file output.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(name)
}

fn realh1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realh1"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = realh1(args);
    assert!(
        out.status.success(),
        "expected success, got {:?}; stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("output is text")
}

/// Parses `  key value` lines into a map; orbit lines are skipped.
fn key_values(human: &str) -> BTreeMap<String, String> {
    human
        .lines()
        .filter_map(|line| {
            let mut words = line.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some(k), Some(v), None) => Some((k.to_string(), v.to_string())),
                _ => None,
            }
        })
        .collect()
}

#[test]
fn json_output_is_bit_stable() {
    for args in [
        vec!["group", spec("compact_g2.json").to_str().unwrap(), "--json"],
        vec![
            "check",
            spec("compact_c2.json").to_str().unwrap(),
            "--json",
            "--seed",
            "7",
        ],
        vec!["torus", spec("weil.json").to_str().unwrap(), "--json"],
    ] {
        let first = stdout_of(&args);
        let second = stdout_of(&args);
        assert_eq!(first, second, "unstable output for {args:?}");
    }
}

#[test]
fn torus_human_and_json_agree() {
    for name in ["split.json", "sign.json", "weil.json"] {
        let path = spec(name);
        let human = key_values(&stdout_of(&["torus", path.to_str().unwrap()]));
        let json: serde_json::Value =
            serde_json::from_str(&stdout_of(&["torus", path.to_str().unwrap(), "--json"]))
                .expect("valid JSON");
        for key in [
            "rank",
            "p",
            "q",
            "r",
            "points2_size",
            "h1_size",
            "lambda_kernel_size",
            "split_points2_size",
            "compact_points2_size",
            "intersection_size",
        ] {
            assert_eq!(
                human.get(key).unwrap_or_else(|| panic!("{name}: no {key}")),
                &json[key].to_string(),
                "{name}: {key} differs between renderings"
            );
        }
    }
}

#[test]
fn group_human_and_json_agree() {
    for name in ["sl2r.json", "a1_shifted.json", "compact_c2.json"] {
        let path = spec(name);
        let human = stdout_of(&["group", path.to_str().unwrap(), "--burnside"]);
        let json: serde_json::Value = serde_json::from_str(&stdout_of(&[
            "group",
            path.to_str().unwrap(),
            "--burnside",
            "--json",
        ]))
        .expect("valid JSON");
        let pairs = key_values(&human);
        assert_eq!(pairs["h1_size"], json["h1_size"].to_string(), "{name}");
        assert_eq!(pairs["w0_order"], json["w0_order"].to_string(), "{name}");
        assert_eq!(pairs["burnside"], json["burnside"].to_string(), "{name}");
        // Orbit lines: `orbit BITS size N` matches representatives and
        // orbit_sizes entrywise.
        let orbits: Vec<(String, String)> = human
            .lines()
            .filter(|l| l.trim().starts_with("orbit "))
            .map(|l| {
                let w: Vec<&str> = l.split_whitespace().collect();
                (w[1].to_string(), w[3].to_string())
            })
            .collect();
        let reps = json["representatives"].as_array().unwrap();
        let sizes = json["orbit_sizes"].as_array().unwrap();
        assert_eq!(orbits.len(), reps.len(), "{name}");
        for ((bits, size), (rep, json_size)) in orbits.iter().zip(reps.iter().zip(sizes)) {
            let rep_bits: String = rep
                .as_array()
                .unwrap()
                .iter()
                .map(|b| if b.as_u64() == Some(1) { '1' } else { '0' })
                .collect();
            assert_eq!(bits, &rep_bits, "{name}");
            assert_eq!(size, &json_size.to_string(), "{name}");
        }
    }
}

#[test]
fn table_human_and_json_agree() {
    let human = stdout_of(&["table", "--series", "C", "--max-rank", "3"]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "table",
        "--series",
        "C",
        "--max-rank",
        "3",
        "--json",
    ]))
    .expect("valid JSON");
    let rows = json["rows"].as_array().unwrap();
    let lines: Vec<Vec<String>> = human
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    assert_eq!(lines.len(), rows.len());
    for (line, row) in lines.iter().zip(rows) {
        assert_eq!(line[0], row["label"].as_str().unwrap());
        assert_eq!(line[2], row["rank"].to_string());
        assert_eq!(line[4], row["h1_size"].to_string());
    }
}

#[test]
fn out_flag_writes_the_same_report() {
    let dir = std::env::temp_dir().join("realh1-cli-io-test");
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("sign-report.json");
    let path = spec("sign.json");
    let streamed = stdout_of(&["torus", path.to_str().unwrap(), "--json"]);
    let out = realh1(&[
        "torus",
        path.to_str().unwrap(),
        "--json",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), streamed);
    std::fs::remove_file(&target).unwrap();
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    // Success.
    assert_eq!(
        realh1(&["torus", spec("split.json").to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    // Missing file.
    assert_eq!(
        realh1(&["torus", "/nonexistent/nowhere.json"]).status.code(),
        Some(1)
    );
    // Invalid document: non-involution, with section context on stderr.
    let dir = std::env::temp_dir().join("realh1-cli-io-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"label":"bad","lattice":{"rank":2,"sigma":[[1,1],[0,1]]}}"#,
    )
    .unwrap();
    let out = realh1(&["torus", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("lattice.sigma"), "stderr: {stderr}");
    assert!(stderr.contains("involution"), "stderr: {stderr}");
    std::fs::remove_file(&bad).unwrap();
    // Wrong document kind for the command.
    assert_eq!(
        realh1(&["group", spec("sign.json").to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    // Usage errors.
    assert_eq!(realh1(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        realh1(&["table", "--series", "Z"]).status.code(),
        Some(1)
    );
    // Help is not an error.
    assert_eq!(realh1(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_passes_on_every_bundled_document() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    let mut names: Vec<_> = std::fs::read_dir(&dir)
        .expect("specs directory exists")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    assert!(names.len() >= 15, "bundled corpus went missing");
    for path in names {
        let out = realh1(&["check", path.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
