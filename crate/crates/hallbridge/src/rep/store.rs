//! Optional on-disk memo for filtration numbers: one JSON record per line,
//! each carrying a checksum so damaged lines are detected and skipped
//! rather than trusted.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::quiver::Quiver;
use crate::{fnv1a64, Result};

use super::IsoKey;

#[derive(Serialize, Deserialize)]
struct Record {
    k: String,
    v: u64,
    c: String,
}

pub struct HallStore {
    path: PathBuf,
    map: HashMap<Vec<u8>, u64>,
    file: Option<File>,
}

fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn from_hex(s: &str) -> Option<Vec<u8>> {
    if s.len() % 2 != 0 {
        return None;
    }
    (0..s.len() / 2)
        .map(|i| u8::from_str_radix(&s[2 * i..2 * i + 2], 16).ok())
        .collect()
}

fn checksum(k: &str, v: u64) -> String {
    format!("{:016x}", fnv1a64(format!("{k}:{v}").as_bytes()))
}

impl HallStore {
    /// Open (creating if necessary) a store file and load its valid records.
    pub fn open(path: &Path) -> Result<HallStore> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut map = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: Option<(Vec<u8>, u64)> = serde_json::from_str::<Record>(&line)
                    .ok()
                    .filter(|r| checksum(&r.k, r.v) == r.c)
                    .and_then(|r| from_hex(&r.k).map(|k| (k, r.v)));
                match parsed {
                    Some((k, v)) => {
                        map.insert(k, v);
                    }
                    None => {
                        eprintln!(
                            "warning: skipping corrupt cache record at {}:{}",
                            path.display(),
                            lineno + 1
                        );
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(HallStore {
            path: path.to_path_buf(),
            map,
            file: Some(file),
        })
    }

    /// An in-memory store that never touches disk (for tests).
    pub fn ephemeral() -> HallStore {
        HallStore {
            path: PathBuf::new(),
            map: HashMap::new(),
            file: None,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, k: &[u8]) -> Option<u64> {
        self.map.get(k).copied()
    }

    pub fn put(&mut self, k: Vec<u8>, v: u64) {
        if self.map.insert(k.clone(), v).is_some() {
            return;
        }
        if let Some(f) = &mut self.file {
            let kh = to_hex(&k);
            let rec = Record {
                c: checksum(&kh, v),
                k: kh,
                v,
            };
            let mut line = serde_json::to_string(&rec).expect("record serializes");
            line.push('\n');
            // best effort: a failed write only loses the memo, not correctness
            let _ = f.write_all(line.as_bytes());
        }
    }

    /// Store key: quiver fingerprint, field size, and the three class keys.
    pub fn key_bytes(quiver: &Quiver, q: u32, l: &IsoKey, m: &IsoKey, n: &IsoKey) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend(quiver.fingerprint().to_le_bytes());
        out.extend(q.to_le_bytes());
        for part in [l, m, n] {
            out.extend((part.0.len() as u32).to_le_bytes());
            out.extend(&part.0);
        }
        out
    }
}
