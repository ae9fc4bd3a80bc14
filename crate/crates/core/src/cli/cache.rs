//! On-disk cache of character tables.
//!
//! One file per degree, `chartable-dNNN.bin`:
//!
//! ```text
//! magic "HHCT" | version u32 | d u32 | n u32
//! n × (length u32, parts u32 …)      partitions in canonical order
//! n × n × i128                       table values, row major
//! SHA-256 of everything above
//! ```
//!
//! All integers are little endian. A file that fails any check is ignored,
//! recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::characters::{character_table, install_table, CharacterTable};
use crate::combinatorics::partitions_of;
use crate::error::{invalid, Result};

pub const CACHE_MAGIC: &[u8; 4] = b"HHCT";
pub const CACHE_VERSION: u32 = 1;

const DIGEST_LEN: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    /// Read from disk and installed.
    Loaded,
    /// No file was present; the table was computed and written.
    Written,
    /// The file was unreadable or stale; the table was recomputed and rewritten.
    Rejected(String),
}

pub fn table_path(dir: &Path, d: usize) -> PathBuf {
    dir.join(format!("chartable-d{d:03}.bin"))
}

pub fn encode_table(table: &CharacterTable) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.extend_from_slice(&(table.degree() as u32).to_le_bytes());
    out.extend_from_slice(&(table.partitions().len() as u32).to_le_bytes());
    for p in table.partitions() {
        out.extend_from_slice(&(p.len() as u32).to_le_bytes());
        for &part in p.parts() {
            out.extend_from_slice(&(part as u32).to_le_bytes());
        }
    }
    for row in table.values() {
        for v in row {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(&digest);
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return invalid("cache file is truncated");
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn i128(&mut self) -> Result<i128> {
        Ok(i128::from_le_bytes(self.take(16)?.try_into().expect("16 bytes")))
    }
}

/// Decodes a cache file for degree `d`, checking every field.
pub fn decode_table(bytes: &[u8], d: usize) -> Result<CharacterTable> {
    if bytes.len() < DIGEST_LEN {
        return invalid("cache file is truncated");
    }
    let (body, digest) = bytes.split_at(bytes.len() - DIGEST_LEN);
    if Sha256::digest(body).as_slice() != digest {
        return invalid("cache checksum mismatch");
    }
    let mut r = Reader { bytes: body, pos: 0 };
    if r.take(4)? != CACHE_MAGIC {
        return invalid("not a character table cache file");
    }
    let version = r.u32()?;
    if version != CACHE_VERSION {
        return invalid(format!("cache version {version}, expected {CACHE_VERSION}"));
    }
    if r.u32()? as usize != d {
        return invalid("cache file is for a different degree");
    }
    let expected = partitions_of(d)?;
    let n = r.u32()? as usize;
    if n != expected.len() {
        return invalid("cache file has the wrong number of partitions");
    }
    for p in &expected {
        let len = r.u32()? as usize;
        let parts = (0..len).map(|_| r.u32().map(|x| x as usize)).collect::<Result<Vec<_>>>()?;
        if parts != p.parts() {
            return invalid("cache file partition order differs");
        }
    }
    let values = (0..n)
        .map(|_| (0..n).map(|_| r.i128()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if r.pos != body.len() {
        return invalid("cache file has trailing bytes");
    }
    CharacterTable::from_values(d, values)
}

/// Returns the table for `d`, preferring the file in `dir`.
pub fn load_or_compute(dir: &Path, d: usize) -> Result<(Arc<CharacterTable>, CacheStatus)> {
    let path = table_path(dir, d);
    let status = match fs::read(&path) {
        Ok(bytes) => match decode_table(&bytes, d) {
            Ok(table) => return Ok((install_table(table), CacheStatus::Loaded)),
            Err(e) => CacheStatus::Rejected(e.to_string()),
        },
        Err(_) => CacheStatus::Written,
    };
    let table = match status {
        // never trust a memoised table over a fresh computation after a bad file
        CacheStatus::Rejected(_) => install_table(CharacterTable::compute(d)?),
        _ => character_table(d)?,
    };
    // an unwritable cache directory only costs recomputation next time
    let _ = fs::create_dir_all(dir).and_then(|_| fs::write(&path, encode_table(&table)));
    Ok((table, status))
}

/// Loads or computes every table for degrees `1..=max_d`.
pub fn warm_cache(dir: &Path, max_d: usize) -> Result<Vec<CacheStatus>> {
    (1..=max_d).map(|d| load_or_compute(dir, d).map(|(_, s)| s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let first = warm_cache(dir.path(), 5).unwrap();
        assert!(first.iter().all(|s| *s == CacheStatus::Written));
        let second = warm_cache(dir.path(), 5).unwrap();
        assert!(second.iter().all(|s| *s == CacheStatus::Loaded));
        let table = CharacterTable::compute(5).unwrap();
        assert_eq!(decode_table(&encode_table(&table), 5).unwrap(), table);
    }

    #[test]
    fn corrupted_files_are_rejected_and_rewritten() {
        let dir = tempfile::tempdir().unwrap();
        load_or_compute(dir.path(), 4).unwrap();
        let path = table_path(dir.path(), 4);

        let mut bytes = fs::read(&path).unwrap();
        let last_value = bytes.len() - DIGEST_LEN - 1;
        bytes[last_value] ^= 0x55;
        fs::write(&path, &bytes).unwrap();
        let (table, status) = load_or_compute(dir.path(), 4).unwrap();
        assert!(matches!(status, CacheStatus::Rejected(ref m) if m.contains("checksum")));
        assert_eq!(*table, CharacterTable::compute(4).unwrap());
        assert_eq!(load_or_compute(dir.path(), 4).unwrap().1, CacheStatus::Loaded);

        // a stale version with a valid checksum
        let mut bytes = encode_table(&table);
        bytes.truncate(bytes.len() - DIGEST_LEN);
        bytes[4..8].copy_from_slice(&(CACHE_VERSION + 1).to_le_bytes());
        let digest = Sha256::digest(&bytes);
        bytes.extend_from_slice(&digest);
        fs::write(&path, &bytes).unwrap();
        let (_, status) = load_or_compute(dir.path(), 4).unwrap();
        assert!(matches!(status, CacheStatus::Rejected(ref m) if m.contains("version")));

        // a file for another degree
        fs::write(&path, encode_table(&CharacterTable::compute(3).unwrap())).unwrap();
        assert!(matches!(load_or_compute(dir.path(), 4).unwrap().1, CacheStatus::Rejected(_)));
    }
}
