//! On-disk lattice cache.
//!
//! One JSON file per (canonical expression, caps) key, named by the SHA-256
//! of the key. Files are written to a temporary name and renamed into place.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use mudeg_core::{ElementSet, ElementTable, Limits, SubgroupLattice};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "MUDEG_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    key: String,
    expression: String,
    max_order: usize,
    max_subgroups: usize,
    group_order: usize,
    element_fingerprint: String,
    /// Per subgroup: member bitset words (hex) and generator indices.
    subgroups: Vec<(Vec<String>, Vec<u32>)>,
    cores: Vec<usize>,
}

/// Resolves the cache directory: explicit flag, then `MUDEG_CACHE_DIR`, then
/// the user cache directory.
pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(p).join("mudeg");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("mudeg");
    }
    std::env::temp_dir().join("mudeg-cache")
}

fn key(expression: &str, limits: Limits) -> String {
    format!(
        "v{CACHE_VERSION}|{expression}|max_order={}|max_subgroups={}",
        limits.max_order, limits.max_subgroups
    )
}

fn file_name(key: &str) -> String {
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("lattice-{hex}.json")
}

pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir }
    }

    pub fn path_for(&self, expression: &str, limits: Limits) -> PathBuf {
        self.dir.join(file_name(&key(expression, limits)))
    }

    /// Returns a lattice only when every stored field matches and the stored
    /// subgroups re-verify against the element table.
    pub fn load(
        &self,
        expression: &str,
        limits: Limits,
        table: &ElementTable,
    ) -> Option<SubgroupLattice> {
        let k = key(expression, limits);
        let text = fs::read_to_string(self.dir.join(file_name(&k))).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.version != CACHE_VERSION
            || file.key != k
            || file.group_order != table.len()
            || file.element_fingerprint != format!("{:016x}", table.fingerprint())
        {
            return None;
        }
        let parts = file
            .subgroups
            .into_iter()
            .map(|(words, gens)| {
                let words = words
                    .iter()
                    .map(|w| u64::from_str_radix(w, 16).ok())
                    .collect::<Option<Vec<_>>>()?;
                Some((ElementSet::from_words(table.len(), words)?, gens))
            })
            .collect::<Option<Vec<_>>>()?;
        let lattice = SubgroupLattice::from_parts(table, parts).ok()?;
        let cores: Vec<usize> = (0..lattice.len()).map(|i| lattice.core_id(i)).collect();
        (cores == file.cores).then_some(lattice)
    }

    pub fn store(
        &self,
        expression: &str,
        limits: Limits,
        table: &ElementTable,
        lattice: &SubgroupLattice,
    ) -> std::io::Result<()> {
        let k = key(expression, limits);
        let file = CacheFile {
            version: CACHE_VERSION,
            key: k.clone(),
            expression: expression.to_string(),
            max_order: limits.max_order,
            max_subgroups: limits.max_subgroups,
            group_order: table.len(),
            element_fingerprint: format!("{:016x}", table.fingerprint()),
            subgroups: lattice
                .subgroups()
                .iter()
                .map(|h| {
                    (
                        h.members()
                            .words()
                            .iter()
                            .map(|w| format!("{w:x}"))
                            .collect(),
                        h.generators().to_vec(),
                    )
                })
                .collect(),
            cores: (0..lattice.len()).map(|i| lattice.core_id(i)).collect(),
        };
        fs::create_dir_all(&self.dir)?;
        let target = self.dir.join(file_name(&k));
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", file_name(&k), std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, &target)
    }
}
