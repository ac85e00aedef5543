//! Append-only JSON-lines store of HOMFLY polynomials. Advisory: unreadable
//! or foreign records are skipped and recomputation is always allowed.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use knotcert::homfly::{Algorithm, Engine};
use knotcert::{LaurentPoly2, Var};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `(strands, least cyclic rotation of the letters)`.
pub type Key = (usize, Vec<i32>);

// fields in alphabetical order so records serialize with sorted keys
#[derive(Debug, Serialize, Deserialize)]
struct Record {
    algorithm: String,
    strands: usize,
    /// `(v exponent, z exponent, coefficient)`.
    terms: Vec<(i32, i32, String)>,
    version: String,
    word: Vec<i32>,
}

impl Record {
    fn decode(&self) -> Option<(Key, LaurentPoly2)> {
        if self.version != VERSION || self.algorithm != Algorithm::Hecke.tag() {
            return None;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, z, c) in &self.terms {
            terms.push((*e, *z, c.parse::<BigInt>().ok()?));
        }
        Some(((self.strands, self.word.clone()), LaurentPoly2::from_terms(Var::V, terms)))
    }
}

#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<Key, LaurentPoly2>,
    skipped: usize,
}

pub fn default_path() -> PathBuf {
    if let Some(p) = std::env::var_os("KNOTCERT_CACHE") {
        return PathBuf::from(p);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")));
    match base {
        Some(b) => b.join("knotcert").join("homfly.jsonl"),
        None => PathBuf::from("knotcert-homfly.jsonl"),
    }
}

impl Cache {
    pub fn disabled() -> Self {
        Cache::default()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cache = Cache {
            path: Some(path.to_path_buf()),
            ..Cache::default()
        };
        if !path.exists() {
            return Ok(cache);
        }
        let text = fs::read_to_string(path).with_context(|| format!("reading cache {}", path.display()))?;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str::<Record>(line).ok().and_then(|r| r.decode()) {
                Some((k, p)) => {
                    cache.entries.insert(k, p);
                }
                None => cache.skipped += 1,
            }
        }
        Ok(cache)
    }

    pub fn entries(&self) -> &BTreeMap<Key, LaurentPoly2> {
        &self.entries
    }

    /// Engine preloaded with every cached polynomial.
    pub fn seed(&self, engine: &mut Engine) {
        for ((s, w), p) in &self.entries {
            engine.insert_homfly(*s, w, p.clone());
        }
    }

    /// Polynomials the engine holds that the cache does not.
    pub fn fresh(&self, engine: &Engine) -> Vec<(Key, LaurentPoly2)> {
        engine
            .homfly_entries()
            .filter(|(s, w, _)| !self.entries.contains_key(&(*s, w.to_vec())))
            .map(|(s, w, p)| ((s, w.to_vec()), p.clone()))
            .collect()
    }

    /// Appends new records; a disabled cache only keeps them in memory.
    pub fn append(&mut self, items: Vec<(Key, LaurentPoly2)>) -> Result<usize> {
        let items: Vec<_> = items.into_iter().filter(|(k, _)| !self.entries.contains_key(k)).collect();
        if items.is_empty() {
            return Ok(0);
        }
        if let Some(path) = &self.path {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening cache {}", path.display()))?;
            let mut buf = String::new();
            for ((strands, word), p) in &items {
                let rec = Record {
                    algorithm: Algorithm::Hecke.tag().into(),
                    strands: *strands,
                    terms: p.to_triples().into_iter().map(|(e, z, c)| (e, z, c.to_string())).collect(),
                    version: VERSION.into(),
                    word: word.clone(),
                };
                buf.push_str(&serde_json::to_string(&rec)?);
                buf.push('\n');
            }
            f.write_all(buf.as_bytes())?;
        }
        let n = items.len();
        self.entries.extend(items);
        Ok(n)
    }

    pub fn stats(&self) -> Value {
        let bytes = self
            .path
            .as_ref()
            .and_then(|p| fs::metadata(p).ok())
            .map_or(0, |m| m.len());
        json!({
            "bytes": bytes,
            "path": self.path.as_ref().map(|p| p.display().to_string()),
            "records": self.entries().len(),
            "skipped": self.skipped,
        })
    }
}

pub fn clear(path: &Path) -> Result<bool> {
    if path.exists() {
        fs::remove_file(path).with_context(|| format!("removing {}", path.display()))?;
        Ok(true)
    } else {
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use knotcert::braid::parse_braid;

    #[test]
    fn records_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("c.jsonl");
        let mut e = Engine::default();
        e.homfly(&parse_braid("1 1 1", None).unwrap()).unwrap();
        e.homfly(&parse_braid("1 -2 1 -2", None).unwrap()).unwrap();
        let mut c = Cache::load(&path).unwrap();
        assert_eq!(c.append(c.fresh(&e)).unwrap(), 2);
        assert_eq!(c.append(c.fresh(&e)).unwrap(), 0);
        fs::write(&path, fs::read_to_string(&path).unwrap() + "not json\n").unwrap();
        let back = Cache::load(&path).unwrap();
        assert_eq!(back.entries().len(), 2);
        assert_eq!(back.stats()["skipped"], 1);
        let key = (2, vec![1, 1, 1]);
        assert_eq!(back.entries()[&key].to_string(), "2*v^2 - v^4 + v^2*z^2");
        assert!(clear(&path).unwrap());
        assert!(!clear(&path).unwrap());
    }
}
