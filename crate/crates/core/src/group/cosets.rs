use std::collections::{BTreeSet, HashMap};

use crate::error::{precondition, Error, Result};
use crate::field::{Fe, FieldCtx};

use super::matrix::{Mat3, MatrixGroup};
use super::named::{alpha, gamma, tau};
use super::perm::{FiniteGroup, Perm, PermGroup};

/// Right cosets `H x` of a subgroup, each sorted, listed by least element.
pub fn right_cosets(g: &FiniteGroup, h: &[u32]) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n as u32 {
        if assigned[x as usize] {
            continue;
        }
        let mut coset: Vec<u32> = h.iter().map(|&a| g.mul(a, x)).collect();
        coset.sort_unstable();
        for &y in &coset {
            assigned[y as usize] = true;
        }
        out.push(coset);
    }
    out
}

/// The permutation action of `g` on the right cosets of `h` by right
/// multiplication, with coset labels in the order of [`right_cosets`].
pub fn coset_action(g: &FiniteGroup, h: &[u32]) -> Result<(PermGroup, Vec<Vec<u32>>)> {
    let cosets = right_cosets(g, h);
    let mut label = vec![0u32; g.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &y in c {
            label[y as usize] = i as u32;
        }
    }
    let gens = g
        .generator_ids()
        .iter()
        .map(|&s| Perm::try_from_vec(cosets.iter().map(|c| label[g.mul(c[0], s) as usize]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok((PermGroup::new(cosets.len(), gens)?, cosets))
}

/// Identifies right cosets `H x` inside an enumerated ambient matrix group
/// by the least element index they contain.
pub struct CosetKeys<'a> {
    ambient: &'a MatrixGroup,
    h: Vec<Mat3>,
}

impl<'a> CosetKeys<'a> {
    pub fn new(ambient: &'a MatrixGroup, h: &[Mat3]) -> Result<Self> {
        if let Some(m) = h.iter().find(|m| !ambient.contains(m)) {
            return Err(Error::Precondition(format!(
                "subgroup element {} lies outside the ambient group",
                m.display(ambient.field())
            )));
        }
        Ok(CosetKeys { ambient, h: h.to_vec() })
    }

    pub fn key(&self, x: &Mat3) -> Result<u32> {
        let k = self.ambient.field();
        self.h
            .iter()
            .map(|a| self.ambient.index_of(&a.mul(k, x)))
            .min()
            .flatten()
            .ok_or_else(|| Error::Precondition(format!("{} lies outside the ambient group", x.display(k))))
    }

    pub fn same_coset(&self, x: &Mat3, y: &Mat3) -> bool {
        let k = self.ambient.field();
        self.h.contains(&x.mul(k, &y.inverse(k)))
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.h.len()
    }
}

/// Distinct cosets met by a family of representatives, with the first
/// representative of each repeated coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCover {
    pub family_size: usize,
    pub distinct: usize,
    pub index: usize,
    pub repeats: Vec<(usize, usize)>,
}

pub fn coset_cover(keys: &CosetKeys, family: &[Mat3]) -> Result<CosetCover> {
    let mut first: HashMap<u32, usize> = HashMap::new();
    let mut repeats = Vec::new();
    for (i, x) in family.iter().enumerate() {
        let key = keys.key(x)?;
        match first.get(&key) {
            Some(&j) => repeats.push((j, i)),
            None => {
                first.insert(key, i);
            }
        }
    }
    let distinct: BTreeSet<u32> = first.keys().copied().collect();
    Ok(CosetCover { family_size: family.len(), distinct: distinct.len(), index: keys.index(), repeats })
}

/// W ∪ τ_ξ W H for each ξ given, where W = {γ_c} and H = <α²>. One ξ is
/// expected for q ≡ 3 (mod 4) and two, with non-square product, for
/// q ≡ 1 (mod 4).
pub fn coset_reps(k: &FieldCtx, xis: &[Fe]) -> Result<Vec<Mat3>> {
    if !k.is_odd() {
        return precondition("the representative family is defined for odd q");
    }
    let q = k.q();
    match (q % 4, xis) {
        (3, [_]) => {}
        (1, [a, b]) if a != b && k.chi(k.mul(*a, *b)) == -1 => {}
        (3, _) => return precondition("q = 3 mod 4 takes exactly one xi"),
        _ => return precondition("q = 1 mod 4 takes two distinct xi with non-square product"),
    }
    let a2 = {
        let a = alpha(k);
        a.mul(k, &a)
    };
    let h: Vec<Mat3> = (1..=(q - 1) / 2).map(|u| a2.pow(k, u as u64)).collect();
    let mut out: Vec<Mat3> = k.elements().map(|c| gamma(k, c)).collect();
    for &xi in xis {
        let t = tau(k, xi)?;
        for c in k.elements() {
            let tg = t.mul(k, &gamma(k, c));
            out.extend(h.iter().map(|x| tg.mul(k, x)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_on_cosets_of_s3() {
        let cyc = Perm::from_vec(vec![1, 2, 3, 0]);
        let swap = Perm::from_vec(vec![1, 0, 2, 3]);
        let g = PermGroup::new(4, vec![cyc, swap]).unwrap().enumerate(100).unwrap();
        let h = g.stabilizer_of_point(3);
        let (act, cosets) = coset_action(&g, &h).unwrap();
        assert_eq!(cosets.len(), 4);
        assert!(act.is_transitive_on(&[0, 1, 2, 3]));
        assert_eq!(act.enumerate(100).unwrap().order(), 24);
    }
}
