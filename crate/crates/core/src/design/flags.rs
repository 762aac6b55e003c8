use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;

use super::incidence::IncidenceStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagOrbitReport {
    pub flags: usize,
    pub flag_orbits: usize,
    pub point_orbits: usize,
    pub block_orbits: usize,
    pub transitive: bool,
}

/// Orbits of `g` on flags, points and blocks. Identical blocks are treated as
/// one block carrying its multiplicity.
pub fn flag_transitive(s: &IncidenceStructure, g: &PermGroup) -> Result<FlagOrbitReport> {
    if g.degree() != s.v() {
        return Err(Error::Precondition(format!("group of degree {} on {} points", g.degree(), s.v())));
    }
    let blocks = s.blocks();
    let mut distinct: Vec<&[u32]> = Vec::new();
    let mut multiplicity: Vec<usize> = Vec::new();
    for b in blocks {
        if distinct.last() == Some(&b.as_slice()) {
            *multiplicity.last_mut().unwrap() += 1;
        } else {
            distinct.push(b);
            multiplicity.push(1);
        }
    }
    let id: HashMap<&[u32], u32> = distinct.iter().enumerate().map(|(i, b)| (*b, i as u32)).collect();
    let mut block_image = Vec::with_capacity(g.generators().len());
    for (gi, p) in g.generators().iter().enumerate() {
        let mut images = Vec::with_capacity(distinct.len());
        for (i, b) in distinct.iter().enumerate() {
            let img = p.image_set(b);
            match id.get(img.as_slice()) {
                Some(&j) if multiplicity[j as usize] == multiplicity[i] => images.push(j),
                _ => return Err(Error::NotAutomorphism(gi)),
            }
        }
        block_image.push(images);
    }

    let mut offset = Vec::with_capacity(distinct.len() + 1);
    offset.push(0usize);
    for b in &distinct {
        offset.push(offset.last().unwrap() + b.len());
    }
    let n_flags = *offset.last().unwrap();
    let flag_id = |bid: u32, x: u32| -> usize {
        let b = distinct[bid as usize];
        offset[bid as usize] + b.binary_search(&x).expect("image flag is incident")
    };
    let mut seen = vec![false; n_flags];
    let mut flag_orbits = 0;
    for bid in 0..distinct.len() as u32 {
        for &x in distinct[bid as usize] {
            let f = flag_id(bid, x);
            if seen[f] {
                continue;
            }
            flag_orbits += 1;
            seen[f] = true;
            let mut queue = VecDeque::from([(bid, x)]);
            while let Some((c, y)) = queue.pop_front() {
                for (gi, p) in g.generators().iter().enumerate() {
                    let (c2, y2) = (block_image[gi][c as usize], p.apply(y));
                    let f2 = flag_id(c2, y2);
                    if !seen[f2] {
                        seen[f2] = true;
                        queue.push_back((c2, y2));
                    }
                }
            }
        }
    }

    let block_perms = block_image.into_iter().map(crate::group::Perm::try_from_vec).collect::<Result<Vec<_>>>()?;
    let block_orbits = PermGroup::new(distinct.len(), block_perms)?.orbits().len();
    let point_orbits = g.orbits().len();
    Ok(FlagOrbitReport {
        flags: blocks.iter().map(Vec::len).sum(),
        flag_orbits,
        point_orbits,
        block_orbits,
        transitive: flag_orbits == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Perm;

    fn fano() -> IncidenceStructure {
        let blocks = (0..7u32).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
        IncidenceStructure::new(7, blocks).unwrap()
    }

    #[test]
    fn cyclic_fano_is_not_flag_transitive() {
        let shift = Perm::from_vec((0..7).map(|i| (i + 1) % 7).collect());
        let g = PermGroup::new(7, vec![shift]).unwrap();
        let rep = flag_transitive(&fano(), &g).unwrap();
        assert_eq!((rep.flags, rep.flag_orbits, rep.point_orbits, rep.block_orbits), (21, 3, 1, 1));
        assert!(!rep.transitive);
        let mult = Perm::from_vec((0..7).map(|i| (2 * i) % 7).collect());
        let g = g.with_generator(mult).unwrap();
        assert!(flag_transitive(&fano(), &g).unwrap().transitive);
    }

    #[test]
    fn trivial_group_and_non_automorphism() {
        let rep = flag_transitive(&fano(), &PermGroup::trivial(7)).unwrap();
        assert_eq!(rep.flag_orbits, 21);
        let swap = Perm::from_vec(vec![1, 0, 2, 3, 4, 5, 6]);
        let g = PermGroup::new(7, vec![swap]).unwrap();
        assert!(matches!(flag_transitive(&fano(), &g), Err(Error::NotAutomorphism(0))));
    }
}
