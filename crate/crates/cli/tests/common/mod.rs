#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coauthnet::corpus::{serialize_canonical, BiblioRecord};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn coauthnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coauthnet"))
        .args(args)
        .output()
        .expect("spawn coauthnet")
}

/// Runs a stage against `out`, returning the exit code and stderr.
pub fn stage(out: &Path, stage: &str, extra: &[&str]) -> (i32, String) {
    let mut args = vec![stage, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = coauthnet(&args);
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )
}

/// Writes a canonical record file whose records have the given author sets
/// and a single country each.
pub fn author_corpus(dir: &Path, teams: &[&[&str]], country: &str) -> PathBuf {
    let records: Vec<BiblioRecord> = teams
        .iter()
        .enumerate()
        .map(|(i, team)| BiblioRecord {
            record_id: format!("R{i}"),
            authors: team.iter().map(|s| s.to_string()).collect(),
            countries: vec![country.to_string()],
            year: Some(2020),
            ..Default::default()
        })
        .collect();
    let path = dir.join("corpus.tsv");
    fs::write(&path, serialize_canonical(&records)).unwrap();
    path
}

pub fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Data rows of a CSV file, `#` lines and header dropped.
pub fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}
