//! Datasets: named tournaments with provenance, stored as JSON-lines
//! manifests.
//!
//! Each manifest line holds one entry: its unique id, the generating family,
//! the parameters that produced it (seeds included, as strings), and the
//! tournament in the text format. Writing and re-reading a manifest is
//! byte-exact, so pipelines can be re-run and diffed.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// One tournament with its provenance.
#[derive(Debug, Clone)]
pub struct DatasetEntry {
    pub id: String,
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub tournament: Tournament,
}

impl DatasetEntry {
    pub fn new(
        id: impl Into<String>,
        family: impl Into<String>,
        params: BTreeMap<String, String>,
        tournament: Tournament,
    ) -> Self {
        DatasetEntry { id: id.into(), family: family.into(), params, tournament }
    }
}

/// An ordered collection of entries with unique ids.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub entries: Vec<DatasetEntry>,
}

#[derive(Serialize, Deserialize)]
struct ManifestRecord {
    id: String,
    family: String,
    params: BTreeMap<String, String>,
    tournament: String,
}

impl Dataset {
    pub fn new(entries: Vec<DatasetEntry>) -> Result<Self> {
        let ds = Dataset { entries };
        ds.check_ids()?;
        Ok(ds)
    }

    fn check_ids(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if e.id.is_empty() || !seen.insert(e.id.as_str()) {
                return Err(Error::Parameter(format!("duplicate or empty entry id `{}`", e.id)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The common player count. Mixed sizes are an alignment error; the
    /// distance and embedding stages only operate on same-size datasets.
    pub fn player_count(&self) -> Result<usize> {
        let mut ns = self.entries.iter().map(|e| e.tournament.n());
        let n = ns
            .next()
            .ok_or_else(|| Error::Parameter("dataset has no entries".into()))?;
        if ns.all(|m| m == n) {
            Ok(n)
        } else {
            Err(Error::Alignment("dataset mixes player counts".into()))
        }
    }

    pub fn ids(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.id.clone()).collect()
    }

    /// Serializes to JSON-lines. Key order inside `params` is sorted and the
    /// record field order is fixed, so equal datasets serialize identically.
    pub fn write_manifest(&self, mut w: impl Write) -> Result<()> {
        self.check_ids()?;
        for e in &self.entries {
            let record = ManifestRecord {
                id: e.id.clone(),
                family: e.family.clone(),
                params: e.params.clone(),
                tournament: e.tournament.to_text(),
            };
            let line = serde_json::to_string(&record)?;
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn save_manifest(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut buf = std::io::BufWriter::new(file);
        self.write_manifest(&mut buf)?;
        buf.flush()?;
        Ok(())
    }

    pub fn read_manifest(r: impl BufRead) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record: ManifestRecord = serde_json::from_str(&line)
                .map_err(|e| Error::Parse(format!("manifest line {}: {e}", lineno + 1)))?;
            let tournament = Tournament::from_text(&record.tournament)
                .map_err(|e| Error::Parse(format!("manifest line {} (`{}`): {e}", lineno + 1, record.id)))?;
            entries.push(DatasetEntry {
                id: record.id,
                family: record.family,
                params: record.params,
                tournament,
            });
        }
        Dataset::new(entries)
    }

    pub fn load_manifest(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", path.display()),
            ))
        })?;
        Self::read_manifest(std::io::BufReader::new(file))
    }
}

/// Convenience for building `params` maps from string pairs.
pub fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::{ordered, rps};

    fn sample() -> Dataset {
        Dataset::new(vec![
            DatasetEntry::new(
                "ord",
                "ord",
                params(&[("n", "5".into())]),
                ordered(5).unwrap(),
            ),
            DatasetEntry::new(
                "rps",
                "rps",
                params(&[("n", "5".into()), ("seed", "0".into())]),
                rps(5).unwrap(),
            ),
        ])
        .unwrap()
    }

    #[test]
    fn manifest_round_trip_is_byte_exact() {
        let ds = sample();
        let mut buf = Vec::new();
        ds.write_manifest(&mut buf).unwrap();
        let back = Dataset::read_manifest(&buf[..]).unwrap();
        let mut buf2 = Vec::new();
        back.write_manifest(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
        assert_eq!(back.len(), 2);
        assert_eq!(back.entries[1].params["seed"], "0");
        assert_eq!(back.entries[1].tournament, rps(5).unwrap());
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let mut ds = sample();
        ds.entries[1].id = "ord".into();
        let mut buf = Vec::new();
        assert!(ds.write_manifest(&mut buf).is_err());
    }

    #[test]
    fn player_count_requires_uniform_sizes() {
        let mut ds = sample();
        assert_eq!(ds.player_count().unwrap(), 5);
        ds.entries[1].tournament = rps(7).unwrap();
        assert!(matches!(ds.player_count(), Err(Error::Alignment(_))));
    }

    #[test]
    fn malformed_manifest_lines_error() {
        assert!(Dataset::read_manifest("not json\n".as_bytes()).is_err());
        let bad = r#"{"id":"x","family":"f","params":{},"tournament":"n=2\n--\n--\n"}"#;
        assert!(Dataset::read_manifest(bad.as_bytes()).is_err());
    }
}
