//! Replays the checked-in fuzz corpus through the same entry points the fuzz targets
//! drive, so the seeds stay exercised on stable toolchains.

use std::fs;
use std::path::PathBuf;

use sticks::parse::{format_rational, parse_range, parse_rational};
use sticks::report::{from_json, to_json, ConstantsReport, Report, VerifyReport};

fn corpus(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| entry.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "empty corpus for {target}");
    files
        .into_iter()
        .map(|path| {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            let bytes = fs::read(&path).unwrap();
            (name, String::from_utf8_lossy(&bytes).into_owned())
        })
        .collect()
}

#[test]
fn rational_seeds() {
    let mut accepted = 0;
    for (name, text) in corpus("parse_rational") {
        if let Ok(q) = parse_rational(&text) {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn range_seeds() {
    for (name, text) in corpus("parse_range") {
        if let Ok(r) = parse_range(&text) {
            assert!(r.start() <= r.end(), "{name}");
        }
    }
}

#[test]
fn report_seeds() {
    let mut decoded = 0;
    for (name, text) in corpus("report_json") {
        if let Ok(r) = from_json::<Report>(&text) {
            if let Some(result) = &r.result {
                result.prob().unwrap_or_else(|e| panic!("{name}: {e}"));
            }
            assert_eq!(from_json::<Report>(&to_json(&r)).unwrap(), r, "{name}");
            decoded += 1;
        }
        if let Ok(r) = from_json::<VerifyReport>(&text) {
            assert_eq!(
                from_json::<VerifyReport>(&to_json(&r)).unwrap(),
                r,
                "{name}"
            );
            decoded += 1;
        }
        if let Ok(r) = from_json::<ConstantsReport>(&text) {
            assert_eq!(
                from_json::<ConstantsReport>(&to_json(&r)).unwrap(),
                r,
                "{name}"
            );
            decoded += 1;
        }
    }
    assert!(decoded >= 7, "only {decoded} seeds decoded");
}
