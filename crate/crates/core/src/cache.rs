//! On-disk cache of census counts.
//!
//! One self-describing text record per key. A record is used only when its
//! version line matches this build and its checksum matches its body; any
//! other file is treated as absent.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::census::{CensusKey, LabelCounts, StratumCounts};
use crate::mold::MoldLabel;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn file_name(key: &CensusKey) -> String {
    format!("census-q{}-m{}-{}.txt", key.q, key.m, key.mode.name())
}

fn body(counts: &StratumCounts) -> String {
    let mut out = String::new();
    out.push_str("moldkit census cache\n");
    out.push_str(&format!("version {VERSION}\n"));
    out.push_str(&format!(
        "key q={} m={} mode={}\n",
        counts.key.q,
        counts.key.m,
        counts.key.mode.name()
    ));
    out.push_str(&format!("total {}\n", counts.total));
    for (label, n) in &counts.points {
        out.push_str(&format!("points {label} {n}\n"));
    }
    if let Some(orbits) = &counts.orbits {
        for (label, n) in orbits {
            out.push_str(&format!("orbits {label} {n}\n"));
        }
    }
    out
}

pub fn encode(counts: &StratumCounts) -> String {
    let body = body(counts);
    let sum = sha256_hex(body.as_bytes());
    format!("{body}checksum {sum}\n")
}

/// Parses a record; `None` on any inconsistency.
pub fn decode(text: &str, key: &CensusKey) -> Option<StratumCounts> {
    let (body, tail) = text.rsplit_once("checksum ")?;
    if tail.trim_end() != sha256_hex(body.as_bytes()) || !tail.ends_with('\n') {
        return None;
    }
    let mut lines = body.lines();
    if lines.next()? != "moldkit census cache" {
        return None;
    }
    if lines.next()? != format!("version {VERSION}") {
        return None;
    }
    let key_line = lines.next()?;
    if key_line != format!("key q={} m={} mode={}", key.q, key.m, key.mode.name()) {
        return None;
    }
    let total: u64 = lines.next()?.strip_prefix("total ")?.parse().ok()?;
    let mut points = LabelCounts::new();
    let mut orbits = LabelCounts::new();
    for line in lines {
        let mut parts = line.split(' ');
        let kind = parts.next()?;
        let label = MoldLabel::from_name(parts.next()?)?;
        let n: u64 = parts.next()?.parse().ok()?;
        match kind {
            "points" => points.insert(label, n),
            "orbits" => orbits.insert(label, n),
            _ => return None,
        };
    }
    if points.len() != MoldLabel::ALL.len() || points.values().sum::<u64>() != total {
        return None;
    }
    let orbits = match orbits.len() {
        0 => None,
        n if n == MoldLabel::ALL.len() => Some(orbits),
        _ => return None,
    };
    Some(StratumCounts {
        key: *key,
        points,
        orbits,
        total,
    })
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CensusKey) -> PathBuf {
        self.dir.join(file_name(key))
    }

    /// A cached record for `key`, if one exists and covers orbits when asked.
    pub fn load(&self, key: &CensusKey, need_orbits: bool) -> Option<StratumCounts> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let counts = decode(&text, key)?;
        if need_orbits && counts.orbits.is_none() {
            return None;
        }
        Some(counts)
    }

    pub fn store(&self, counts: &StratumCounts) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&counts.key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, encode(counts))?;
        fs::rename(tmp, path)
    }
}
