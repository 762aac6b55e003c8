//! Conjugacy classes of subgroups by cyclic extension.
//!
//! Every subgroup is reached from the trivial group by repeatedly adjoining
//! one cyclic subgroup, and conjugating a chain gives a chain, so it is enough
//! to extend one representative per class. When target orders are given, only
//! subgroups whose order divides some target are ever extended.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

use super::perm::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Sorted element ids of the lexicographically least conjugate.
    pub rep: Vec<u32>,
    pub generators: Vec<u32>,
    pub class_size: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.rep.len()
    }
}

pub const DEFAULT_SUBGROUP_CAP: usize = 200_000;

fn cyclic_generators(g: &FiniteGroup) -> Vec<u32> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for e in 1..g.order() as u32 {
        if seen.insert(g.closure(&[e])) {
            out.push(e);
        }
    }
    out
}

pub fn subgroup_classes(g: &FiniteGroup, targets: Option<&[usize]>, cap: usize) -> Result<Vec<SubgroupClass>> {
    let allowed = |n: usize| targets.is_none_or(|t| t.iter().any(|&o| o % n == 0));
    let cyclic = cyclic_generators(g);
    let mut seen: HashSet<Vec<u32>> = HashSet::from([vec![0]]);
    let mut classes = vec![SubgroupClass { rep: vec![0], generators: vec![], class_size: 1 }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(ci) = queue.pop_front() {
        let (h, h_gens) = (classes[ci].rep.clone(), classes[ci].generators.clone());
        for &c in &cyclic {
            if h.binary_search(&c).is_ok() {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(c);
            let j = g.closure(&gens);
            if !allowed(j.len()) || seen.contains(&j) {
                continue;
            }
            let mut conjugates: Vec<Vec<u32>> = (0..g.order() as u32).map(|x| g.conjugate_subgroup(&j, x)).collect();
            conjugates.sort_unstable();
            conjugates.dedup();
            let rep = conjugates[0].clone();
            let class_size = conjugates.len();
            seen.extend(conjugates);
            if seen.len() > cap {
                return Err(Error::CapExceeded { what: "subgroup count", cap });
            }
            let generators = g.generators_of(&rep);
            classes.push(SubgroupClass { rep, generators, class_size });
            queue.push_back(classes.len() - 1);
        }
    }
    let mut out: Vec<SubgroupClass> =
        classes.into_iter().filter(|c| targets.is_none_or(|t| t.contains(&c.order()))).collect();
    out.sort_by(|a, b| (a.order(), &a.rep).cmp(&(b.order(), &b.rep)));
    Ok(out)
}

/// Dihedral of order `elems.len()` (at least 4): a cyclic subgroup of index
/// two and an involution outside it inverting its generator.
pub fn is_dihedral(g: &FiniteGroup, elems: &[u32]) -> bool {
    let n = elems.len();
    if n < 4 || n % 2 == 1 {
        return false;
    }
    let m = n / 2;
    let rotations: Vec<u32> =
        elems.iter().copied().filter(|&e| m.is_multiple_of(g.element_order(e)) && e != 0).collect();
    let Some(&c) = rotations.iter().find(|&&e| g.element_order(e) == m) else {
        return false;
    };
    let cyc = g.closure(&[c]);
    elems.iter().filter(|e| cyc.binary_search(e).is_err()).all(|&t| g.element_order(t) == 2 && g.conj(c, t) == g.inv(c))
}

pub fn is_abelian(g: &FiniteGroup, elems: &[u32]) -> bool {
    let gens = g.generators_of(elems);
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn are_conjugate(g: &FiniteGroup, a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && (0..g.order() as u32).any(|x| g.conjugate_subgroup(a, x) == b)
}
