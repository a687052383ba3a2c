//! Line-delimited JSON files of labeled evaluation entries and mined pairs.

use std::fs;
use std::io::Write;
use std::path::Path;

use bugnav_core::eval::{EvalDataset, EvalEntry};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CorpusError, Result};

/// Reads one JSON record per non-blank line.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
    parse_jsonl(&text).map_err(|(line, e)| CorpusError::Decode { request: format!("{}:{line}", path.display()), reason: e })
}

pub fn parse_jsonl<T: DeserializeOwned>(text: &str) -> std::result::Result<Vec<T>, (usize, String)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| (i + 1, e.to_string())))
        .collect()
}

pub fn to_jsonl<T: Serialize>(records: &[T]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| CorpusError::io(path, e))?;
    f.write_all(to_jsonl(records).as_bytes()).map_err(|e| CorpusError::io(path, e))
}

/// Loads and validates an evaluation dataset.
pub fn load_dataset(path: &Path) -> Result<EvalDataset> {
    let entries: Vec<EvalEntry> = read_jsonl(path)?;
    let dataset = EvalDataset { entries };
    dataset.validate()?;
    Ok(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"{"driver":"o/r#1","candidates":[{"issue":"x/y#2","factors":{"issue_length":0.1,"num_comment":0.0,"code":0.0,"dependency":0.0,"permission":0.0,"ui":0.0,"has_fix":0.0,"keywords":0.0}}],"relevant":["x/y#2"]}"#;

    #[test]
    fn round_trip() {
        let entries: Vec<EvalEntry> = parse_jsonl(&format!("{LINE}\n\n")).unwrap();
        assert_eq!(entries.len(), 1);
        let again: Vec<EvalEntry> = parse_jsonl(&to_jsonl(&entries)).unwrap();
        assert_eq!(again, entries);
    }

    #[test]
    fn bad_line_reports_its_number() {
        let err = parse_jsonl::<EvalEntry>(&format!("{LINE}\n{{oops")).unwrap_err();
        assert_eq!(err.0, 2);
    }

    #[test]
    fn invalid_dataset_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        fs::write(&path, LINE.replace(r#""relevant":["x/y#2"]"#, r#""relevant":["z/z#9"]"#)).unwrap();
        assert!(matches!(load_dataset(&path), Err(CorpusError::Invalid(_))));
        fs::write(&path, "").unwrap();
        assert!(load_dataset(&path).is_err());
    }
}
