//! Plain-text cache of enumerated matrix groups.
//!
//! ```text
//! FGDT-GROUP v1 q=<q>
//! generators <n>
//! a b c|d e f|g h i      (n lines, field element indices)
//! elements <m>
//! a b c|d e f|g h i      (m lines, in enumeration order)
//! ```
//!
//! Action tables are not stored; they are cheap to rebuild from the matrices.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

use super::matrix::{Mat3, MatrixGroup, DEFAULT_ORDER_CAP};

const HEADER: &str = "FGDT-GROUP v1";

static CACHE_DIR: RwLock<Option<PathBuf>> = RwLock::new(None);

/// Sets the directory consulted by the named-group constructors.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *CACHE_DIR.write().unwrap_or_else(|e| e.into_inner()) = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    CACHE_DIR.read().unwrap_or_else(|e| e.into_inner()).clone()
}

fn format_mat(m: &Mat3) -> String {
    m.0.chunks(3)
        .map(|row| row.iter().map(|x| x.index().to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("|")
}

fn parse_mat(k: &FieldCtx, line: &str) -> Result<Mat3> {
    let entries: Vec<u32> = line
        .split(['|', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|e| Error::Parse(format!("matrix entry {s:?}: {e}"))))
        .collect::<Result<_>>()?;
    if entries.len() != 9 || entries.iter().any(|&x| x >= k.q()) {
        return Err(Error::Parse(format!("bad matrix line {line:?}")));
    }
    let mut m = [Fe::ZERO; 9];
    for (slot, x) in m.iter_mut().zip(entries) {
        *slot = Fe(x as u16);
    }
    Ok(Mat3(m))
}

/// Hex digest of the field header and generator list.
pub fn generator_hash(k: &FieldCtx, generators: &[Mat3]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{:?}\n", k.header()));
    for g in generators {
        h.update(format_mat(g));
        h.update("\n");
    }
    h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, k: &FieldCtx, generators: &[Mat3]) -> PathBuf {
    dir.join(format!("group-q{}-{}.txt", k.q(), generator_hash(k, generators)))
}

pub fn write_group(g: &MatrixGroup) -> String {
    let mut out = format!("{HEADER} q={}\ngenerators {}\n", g.field().q(), g.generators().len());
    for m in g.generators() {
        out.push_str(&format_mat(m));
        out.push('\n');
    }
    out.push_str(&format!("elements {}\n", g.order()));
    for m in g.elements() {
        out.push_str(&format_mat(m));
        out.push('\n');
    }
    out
}

pub fn read_group(field: Arc<FieldCtx>, text: &str) -> Result<MatrixGroup> {
    let mut lines = text.lines();
    let expected = format!("{HEADER} q={}", field.q());
    if lines.next() != Some(expected.as_str()) {
        return Err(Error::Parse(format!("missing header {expected:?}")));
    }
    let mut section = |name: &str| -> Result<Vec<Mat3>> {
        let head = lines.next().ok_or_else(|| Error::Parse(format!("missing {name} line")))?;
        let n: usize = head
            .strip_prefix(name)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad {name} line {head:?}")))?;
        (0..n).map(|_| parse_mat(&field, lines.next().ok_or_else(|| Error::Parse("truncated file".into()))?)).collect()
    };
    let generators = section("generators")?;
    let elements = section("elements")?;
    MatrixGroup::from_elements(field, generators, elements)
}

/// Loads the group from `dir` when a valid cache file exists, otherwise
/// enumerates it and tries to write the file. Unreadable or stale caches are
/// silently rebuilt.
pub fn load_or_generate(dir: Option<&Path>, field: Arc<FieldCtx>, generators: &[Mat3]) -> Result<MatrixGroup> {
    let Some(dir) = dir else {
        return MatrixGroup::generate(field, generators, DEFAULT_ORDER_CAP);
    };
    let path = cache_path(dir, &field, generators);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(g) = read_group(field.clone(), &text) {
            if g.generators() == generators {
                return Ok(g);
            }
        }
    }
    let g = MatrixGroup::generate(field, generators, DEFAULT_ORDER_CAP)?;
    if fs::create_dir_all(dir).is_ok() {
        let _ = fs::write(&path, write_group(&g));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::psl2_generators;

    #[test]
    fn round_trip() {
        let k = Arc::new(FieldCtx::of_order(5).unwrap());
        let gens = psl2_generators(&k);
        let g = MatrixGroup::generate(k.clone(), &gens, 1000).unwrap();
        let text = write_group(&g);
        assert!(text.starts_with("FGDT-GROUP v1 q=5\n"));
        let back = read_group(k.clone(), &text).unwrap();
        assert_eq!(back.elements(), g.elements());
        assert!(read_group(k, &text.replace("q=5", "q=7")).is_err());
    }
}
