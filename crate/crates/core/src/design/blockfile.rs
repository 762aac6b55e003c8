//! Block files: a header line `v b k lambda`, then one block per line as
//! sorted zero-based point indices separated by single spaces.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::incidence::IncidenceStructure;

pub fn write_blocks(s: &IncidenceStructure, lambda: usize) -> String {
    let k = s.blocks().first().map_or(0, Vec::len);
    let mut out = format!("{} {} {} {}\n", s.v(), s.b(), k, lambda);
    for b in s.blocks() {
        let line: Vec<String> = b.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_blocks(text: &str) -> Result<(IncidenceStructure, usize)> {
    let mut lines = text.lines();
    let head: Vec<usize> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty block file".into()))?
        .split(' ')
        .map(|t| t.parse().map_err(|e| Error::Parse(format!("header field {t:?}: {e}"))))
        .collect::<Result<_>>()?;
    let [v, b, k, lambda] = head[..] else {
        return Err(Error::Parse("header must be `v b k lambda`".into()));
    };
    let blocks: Vec<Vec<u32>> = lines
        .map(|l| {
            l.split(' ')
                .map(|t| t.parse().map_err(|e| Error::Parse(format!("point {t:?}: {e}"))))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    if blocks.len() != b || blocks.iter().any(|blk| blk.len() != k || blk.windows(2).any(|w| w[0] >= w[1])) {
        return Err(Error::Parse("block lines disagree with the header or are not sorted".into()));
    }
    Ok((IncidenceStructure::new(v, blocks)?, lambda))
}

/// JSON object mapping point indices to their geometric descriptions.
pub fn labels_json(s: &IncidenceStructure) -> Option<Value> {
    let labels = s.labels()?;
    let map: serde_json::Map<String, Value> =
        labels.iter().enumerate().map(|(i, l)| (i.to_string(), json!(l))).collect();
    Some(Value::Object(map))
}
