use std::fmt;

use serde::Serialize;

use crate::error::{precondition, Result};

/// Points `0..v` and a list of blocks, each strictly increasing; the block
/// list is kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl IncidenceStructure {
    pub fn new(v: usize, mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return precondition(format!("block {b:?} repeats a point"));
            }
            if b.last().is_some_and(|&x| x as usize >= v) {
                return precondition(format!("block {b:?} has a point outside 0..{v}"));
            }
        }
        blocks.sort_unstable();
        Ok(IncidenceStructure { v, blocks, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.v {
            return precondition(format!("{} labels for {} points", labels.len(), self.v));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn repeated_blocks(&self) -> usize {
        self.blocks.windows(2).filter(|w| w[0] == w[1]).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignParams {
    pub fn new(v: usize, b: usize, r: usize, k: usize, lambda: usize) -> Result<Self> {
        let p = DesignParams { v, b, r, k, lambda };
        if !p.admissible() {
            return precondition(format!("{p} violates bk = vr or lambda(v-1) = r(k-1)"));
        }
        Ok(p)
    }

    /// Replication number and block count forced by (v, k, lambda), if integral.
    pub fn derive(v: usize, k: usize, lambda: usize) -> Option<Self> {
        if k < 2 || v < 2 || !(lambda * (v - 1)).is_multiple_of(k - 1) {
            return None;
        }
        let r = lambda * (v - 1) / (k - 1);
        (v * r).is_multiple_of(k).then(|| DesignParams { v, b: v * r / k, r, k, lambda })
    }

    pub fn admissible(&self) -> bool {
        self.b * self.k == self.v * self.r
            && self.lambda * (self.v.saturating_sub(1)) == self.r * self.k.saturating_sub(1)
    }

    pub fn is_nontrivial(&self) -> bool {
        2 < self.k && self.k + 1 < self.v
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2-({},{},{}) with b={} r={}", self.v, self.k, self.lambda, self.b, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certified {
    pub params: DesignParams,
    pub repeated_blocks: usize,
}

/// The first violation found, in the order: block sizes, replication, pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertFailure {
    NoBlocks,
    BlockSize { block: usize, size: usize, expected: usize },
    Replication { point: u32, r: usize, expected: usize },
    PairCoverage { pair: (u32, u32), count: usize, expected: usize },
}

impl fmt::Display for CertFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertFailure::NoBlocks => write!(f, "no blocks"),
            CertFailure::BlockSize { block, size, expected } => {
                write!(f, "block {block} has size {size}, expected {expected}")
            }
            CertFailure::Replication { point, r, expected } => {
                write!(f, "point {point} lies on {r} blocks, expected {expected}")
            }
            CertFailure::PairCoverage { pair, count, expected } => {
                write!(f, "pair {{{},{}}} is covered {count} times, expected {expected}", pair.0, pair.1)
            }
        }
    }
}

/// Full check of the 2-design property by enumerating every pair of points.
pub fn certify_design(s: &IncidenceStructure, lambda: usize) -> std::result::Result<Certified, CertFailure> {
    let blocks = s.blocks();
    let v = s.v();
    let Some(first) = blocks.first() else {
        return Err(CertFailure::NoBlocks);
    };
    let k = first.len();
    if let Some((i, b)) = blocks.iter().enumerate().find(|(_, b)| b.len() != k) {
        return Err(CertFailure::BlockSize { block: i, size: b.len(), expected: k });
    }
    let mut reps = vec![0usize; v];
    let mut pairs = vec![0u32; v * v];
    for b in blocks {
        for (i, &x) in b.iter().enumerate() {
            reps[x as usize] += 1;
            for &y in &b[i + 1..] {
                pairs[x as usize * v + y as usize] += 1;
            }
        }
    }
    let r = reps[0];
    if let Some(p) = reps.iter().position(|&c| c != r) {
        return Err(CertFailure::Replication { point: p as u32, r: reps[p], expected: r });
    }
    for x in 0..v {
        for y in x + 1..v {
            let c = pairs[x * v + y] as usize;
            if c != lambda {
                return Err(CertFailure::PairCoverage { pair: (x as u32, y as u32), count: c, expected: lambda });
            }
        }
    }
    let params = DesignParams { v, b: blocks.len(), r, k, lambda };
    debug_assert!(params.admissible());
    Ok(Certified { params, repeated_blocks: s.repeated_blocks() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pairs(v: u32) -> Vec<Vec<u32>> {
        (0..v).flat_map(|x| (x + 1..v).map(move |y| vec![x, y])).collect()
    }

    #[test]
    fn complete_design_on_four_points() {
        let s = IncidenceStructure::new(4, all_pairs(4)).unwrap();
        let c = certify_design(&s, 1).unwrap();
        assert_eq!(c.params, DesignParams { v: 4, b: 6, r: 3, k: 2, lambda: 1 });
    }

    #[test]
    fn doubled_block_is_trivial() {
        let s = IncidenceStructure::new(3, vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        let c = certify_design(&s, 2).unwrap();
        assert_eq!(c.repeated_blocks, 1);
        assert!(!c.params.is_nontrivial());
    }

    #[test]
    fn failures_carry_witnesses() {
        let s = IncidenceStructure::new(4, vec![vec![0, 1], vec![2, 3, 1]]).unwrap();
        assert!(matches!(certify_design(&s, 1), Err(CertFailure::BlockSize { .. })));
        let s = IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(certify_design(&s, 1), Err(CertFailure::Replication { point: 1, r: 2, expected: 1 }));
        assert!(IncidenceStructure::new(3, vec![vec![0, 0]]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![0, 3]]).is_err());
    }

    #[test]
    fn parameter_identities() {
        assert_eq!(DesignParams::derive(28, 3, 2), Some(DesignParams { v: 28, b: 252, r: 27, k: 3, lambda: 2 }));
        assert!(DesignParams::new(28, 252, 27, 7, 2).is_err());
        assert_eq!(DesignParams::derive(36, 8, 2).map(|p| (p.b, p.r)), Some((45, 10)));
        assert_eq!(DesignParams::derive(10, 4, 3), None);
    }
}
