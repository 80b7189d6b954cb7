use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::TrcResult;

#[derive(Serialize, Deserialize)]
struct Row {
    key: String,
    result: TrcResult,
}

/// Append-only JSON-lines store of solver results keyed by the graph6 line.
///
/// Exact values are never replaced; intervals are replaced by exact values
/// or by strictly narrower intervals. A file with any unreadable row is
/// discarded as a whole.
pub struct TrcCache {
    map: HashMap<String, TrcResult>,
    writer: Option<BufWriter<File>>,
    path: Option<PathBuf>,
    rebuilt: bool,
}

impl TrcCache {
    pub fn in_memory() -> Self {
        TrcCache {
            map: HashMap::new(),
            writer: None,
            path: None,
            rebuilt: false,
        }
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let mut map = HashMap::new();
        let mut corrupt = false;
        if path.exists() {
            let raw = std::fs::read(&path).map_err(io)?;
            // a missing final newline means the last write was cut short
            corrupt = !raw.is_empty() && raw.last() != Some(&b'\n');
            if !corrupt {
                for line in BufReader::new(raw.as_slice()).lines() {
                    match line.ok().and_then(|l| serde_json::from_str::<Row>(&l).ok()) {
                        Some(row) => {
                            merge(&mut map, row.key, row.result);
                        }
                        None => {
                            corrupt = true;
                            break;
                        }
                    }
                }
            }
        }
        if corrupt {
            map.clear();
        }
        let file = OpenOptions::new()
            .create(true)
            .append(!corrupt)
            .write(true)
            .truncate(corrupt)
            .open(&path)
            .map_err(io)?;
        Ok(TrcCache {
            map,
            writer: Some(BufWriter::new(file)),
            path: Some(path),
            rebuilt: corrupt,
        })
    }

    /// True if `open` found a damaged file and started over.
    pub fn was_rebuilt(&self) -> bool {
        self.rebuilt
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&TrcResult> {
        self.map.get(key)
    }

    /// Cached exact result, if any.
    pub fn get_exact(&self, key: &str) -> Option<&TrcResult> {
        self.get(key).filter(|r| r.value.exact().is_some())
    }

    /// Stores `result` unless it is no better than what is cached; returns
    /// whether it was stored.
    pub fn put(&mut self, key: &str, result: TrcResult) -> Result<bool> {
        if !merge(&mut self.map, key.to_string(), result.clone()) {
            return Ok(false);
        }
        if let Some(w) = self.writer.as_mut() {
            let row = Row {
                key: key.to_string(),
                result,
            };
            let line = serde_json::to_string(&row).map_err(|e| Error::Cache(e.to_string()))?;
            writeln!(w, "{line}")
                .and_then(|_| w.flush())
                .map_err(|e| Error::Cache(e.to_string()))?;
        }
        Ok(true)
    }
}

fn merge(map: &mut HashMap<String, TrcResult>, key: String, result: TrcResult) -> bool {
    let better = match map.get(&key) {
        None => true,
        Some(old) => match (old.value.exact(), result.value.exact()) {
            (Some(_), _) => false,
            (None, Some(_)) => true,
            (None, None) => {
                let (a, b) = (old.value, result.value);
                b.lo() >= a.lo() && b.hi() <= a.hi() && b != a
            }
        },
    };
    if better {
        map.insert(key, result);
    }
    better
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{Method, TrcValue};

    fn result(value: TrcValue) -> TrcResult {
        TrcResult {
            value,
            certificate: None,
            method: Method::Search,
            stats: Default::default(),
        }
    }

    #[test]
    fn put_get_and_upgrade() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = TrcCache::open(&path).unwrap();
        assert!(c.get("C?").is_none());
        let iv = result(TrcValue::Interval { lo: 3, hi: 5 });
        assert!(c.put("C?", iv.clone()).unwrap());
        assert_eq!(c.get("C?"), Some(&iv));
        let ex = result(TrcValue::Exact { value: 4 });
        assert!(c.put("C?", ex.clone()).unwrap());
        assert!(!c.put("C?", iv).unwrap());
        drop(c);
        let c = TrcCache::open(&path).unwrap();
        assert_eq!(c.get_exact("C?"), Some(&ex));
        assert!(!c.was_rebuilt());
    }

    #[test]
    fn corrupt_file_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        {
            let mut c = TrcCache::open(&path).unwrap();
            c.put("A_", result(TrcValue::Exact { value: 1 })).unwrap();
        }
        let mut raw = std::fs::read_to_string(&path).unwrap();
        raw.push_str("{\"key\":\"B");
        std::fs::write(&path, raw).unwrap();
        let mut c = TrcCache::open(&path).unwrap();
        assert!(c.was_rebuilt());
        assert!(c.is_empty());
        c.put("Bw", result(TrcValue::Exact { value: 1 })).unwrap();
        drop(c);
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
    }
}
