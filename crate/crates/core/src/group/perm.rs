use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

/// A permutation of `0..n`, acting on the right: `x^(ab) = (x^a)^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_vec(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&x| (x as usize) < seen.len() && !std::mem::replace(&mut seen[x as usize], true))
        });
        Perm(images)
    }

    pub fn try_from_vec(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= seen.len() || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::Precondition("image list is not a permutation".into()));
            }
        }
        Ok(Perm(images))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut acc = 1u64;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            acc = lcm(acc, len);
        }
        acc
    }

    /// Sorted image of a point set.
    pub fn image_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }

    /// Restriction to an invariant subset, relabelled by position in `domain`.
    pub fn restrict(&self, domain: &[u32], position: &HashMap<u32, u32>) -> Result<Perm> {
        domain
            .iter()
            .map(|&x| {
                position
                    .get(&self.apply(x))
                    .copied()
                    .ok_or_else(|| Error::Precondition(format!("domain is not invariant: {x} leaves it")))
            })
            .collect::<Result<Vec<u32>>>()
            .map(Perm)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Orbits of a group action, with a Schreier tree for transversal words.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<u32>>,
    /// `orbit_of[x]` is the orbit number of `x`, or `u32::MAX` outside the base set.
    pub orbit_of: Vec<u32>,
    /// For each reached point, the predecessor and the generator used.
    parent: Vec<Option<(u32, u32)>>,
}

impl OrbitPartition {
    pub fn representatives(&self) -> Vec<u32> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    /// Generator indices whose product maps the orbit representative to `x`.
    pub fn word_to(&self, x: u32) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = x;
        while let Some((prev, g)) = self.parent[cur as usize] {
            word.push(g as usize);
            cur = prev;
        }
        word.reverse();
        word
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Precondition(format!("generators must all have degree {degree}")));
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn with_generator(&self, g: Perm) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        PermGroup::new(self.degree, gens)
    }

    /// Orbits on `restrict` (or on every point), each sorted, listed by
    /// smallest element.
    pub fn orbit_partition(&self, restrict: Option<&[u32]>) -> OrbitPartition {
        let n = self.degree;
        let mut orbit_of = vec![u32::MAX; n];
        let mut parent = vec![None; n];
        let mut allowed = vec![restrict.is_none(); n];
        if let Some(r) = restrict {
            for &x in r {
                allowed[x as usize] = true;
            }
        }
        let mut orbits = Vec::new();
        for start in 0..n as u32 {
            if !allowed[start as usize] || orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            orbit_of[start as usize] = id;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (gi, g) in self.generators.iter().enumerate() {
                    let y = g.apply(x);
                    if orbit_of[y as usize] == u32::MAX {
                        orbit_of[y as usize] = id;
                        parent[y as usize] = Some((x, gi as u32));
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        OrbitPartition { orbits, orbit_of, parent }
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        self.orbit_partition(None).orbits
    }

    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for g in &self.generators {
                let z = g.apply(y);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        let mut out: Vec<u32> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn is_transitive_on(&self, set: &[u32]) -> bool {
        match set.first() {
            None => true,
            Some(&x) => self.orbit(x) == set,
        }
    }

    /// The orbit of a point set, as a sorted list of sorted sets.
    pub fn set_orbit(&self, set: &[u32], cap: usize) -> Result<Vec<Vec<u32>>> {
        let mut start = set.to_vec();
        start.sort_unstable();
        let mut seen: HashSet<Vec<u32>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for g in &self.generators {
                let t = g.image_set(&s);
                if !seen.contains(&t) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { what: "set orbit length", cap });
                    }
                    seen.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn preserves_set(&self, set: &[u32]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.generators.iter().all(|g| g.image_set(&s) == s)
    }

    pub fn enumerate(&self, cap: usize) -> Result<FiniteGroup> {
        FiniteGroup::from_generators(self.degree, &self.generators, cap)
    }
}

/// Largest group for which a full Cayley table is built.
pub const CAYLEY_CAP: usize = 6000;

/// An enumerated permutation group. Elements are identified by their images
/// of a base (a point sequence fixed pointwise only by the identity), which
/// makes products cheap without materializing full permutations.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    generator_ids: Vec<u32>,
    base: Vec<u32>,
    by_base: HashMap<Vec<u32>, u32>,
    table: Vec<u16>,
    inverses: Vec<u32>,
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, generators: &[Perm], cap: usize) -> Result<Self> {
        let id = Perm::identity(degree);
        let mut index: HashMap<Perm, u32> = HashMap::from([(id.clone(), 0)]);
        let mut elements = vec![id];
        let mut layer = vec![0u32];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &x in &layer {
                for g in generators {
                    let y = elements[x as usize].then(g);
                    if !index.contains_key(&y) {
                        index.insert(y.clone(), elements.len() as u32);
                        elements.push(y);
                        next.push(elements.len() as u32 - 1);
                        if elements.len() > cap {
                            return Err(Error::CapExceeded { what: "group order", cap });
                        }
                    }
                }
            }
            layer = next;
        }
        let generator_ids = generators.iter().map(|g| index[g]).collect();
        Self::finish(degree, elements, generator_ids)
    }

    fn finish(degree: usize, elements: Vec<Perm>, generator_ids: Vec<u32>) -> Result<Self> {
        let n = elements.len();
        if n > CAYLEY_CAP {
            return Err(Error::CapExceeded { what: "group order for a Cayley table", cap: CAYLEY_CAP });
        }
        let mut base = Vec::new();
        let mut alive: Vec<u32> = (1..n as u32).collect();
        while !alive.is_empty() {
            let moved = (0..degree as u32)
                .find(|&x| elements[alive[0] as usize].apply(x) != x)
                .expect("non-identity element moves a point");
            base.push(moved);
            alive.retain(|&e| elements[e as usize].apply(moved) == moved);
        }
        let key = |p: &Perm| base.iter().map(|&b| p.apply(b)).collect::<Vec<u32>>();
        let by_base: HashMap<Vec<u32>, u32> = elements.iter().enumerate().map(|(i, p)| (key(p), i as u32)).collect();
        if by_base.len() != n {
            return Err(Error::Inconsistent("base does not separate elements".into()));
        }
        let mut table = vec![0u16; n * n];
        let mut buf = vec![0u32; base.len()];
        for a in 0..n {
            for b in 0..n {
                for (slot, &x) in buf.iter_mut().zip(&base) {
                    *slot = elements[b].apply(elements[a].apply(x));
                }
                table[a * n + b] = by_base[&buf] as u16;
            }
        }
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u32).collect();
        Ok(FiniteGroup { degree, elements, generator_ids, base, by_base, table, inverses })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generator_ids(&self) -> &[u32] {
        &self.generator_ids
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        let key: Vec<u32> = self.base.iter().map(|&b| p.apply(b)).collect();
        let i = *self.by_base.get(&key)?;
        (self.elements[i as usize] == *p).then_some(i)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.elements.len() + b as usize] as u32
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Sorted element ids of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let n = self.elements.len();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut list = vec![0u32];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn as_perm_group(&self) -> PermGroup {
        let gens = self.generator_ids.iter().map(|&g| self.elements[g as usize].clone()).collect();
        PermGroup { degree: self.degree, generators: gens }
    }

    /// Permutation group generated by a set of element ids.
    pub fn subgroup_perm_group(&self, gens: &[u32]) -> PermGroup {
        let gens = gens.iter().filter(|&&g| g != 0).map(|&g| self.elements[g as usize].clone()).collect();
        PermGroup { degree: self.degree, generators: gens }
    }

    /// A small generating set of a subgroup given by its element list.
    pub fn generators_of(&self, elems: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        let mut sorted_elems = elems.to_vec();
        sorted_elems.sort_unstable();
        for &e in &sorted_elems {
            if span.binary_search(&e).is_err() {
                gens.push(e);
                span = self.closure(&gens);
            }
            if span.len() == elems.len() {
                break;
            }
        }
        gens
    }

    pub fn stabilizer_of_point(&self, x: u32) -> Vec<u32> {
        (0..self.elements.len() as u32).filter(|&e| self.elements[e as usize].apply(x) == x).collect()
    }

    pub fn stabilizer_of_set(&self, set: &[u32]) -> Vec<u32> {
        let mut s = set.to_vec();
        s.sort_unstable();
        (0..self.elements.len() as u32).filter(|&e| self.elements[e as usize].image_set(&s) == s).collect()
    }

    /// The conjugate `x^-1 H x` of a subgroup given as sorted ids.
    pub fn conjugate_subgroup(&self, h: &[u32], x: u32) -> Vec<u32> {
        let mut out: Vec<u32> = h.iter().map(|&a| self.conj(a, x)).collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Perm {
        Perm::from_vec((0..n as u32).map(|i| (i + 1) % n as u32).collect())
    }

    #[test]
    fn symmetric_group_s4() {
        let swap = Perm::from_vec(vec![1, 0, 2, 3]);
        let g = PermGroup::new(4, vec![cyc(4), swap]).unwrap();
        let fg = g.enumerate(100).unwrap();
        assert_eq!(fg.order(), 24);
        for a in 0..24 {
            assert_eq!(fg.mul(a, fg.inv(a)), 0);
            for b in 0..24 {
                let prod = fg.element(a).then(fg.element(b));
                assert_eq!(fg.index_of(&prod), Some(fg.mul(a, b)));
            }
        }
        assert_eq!(fg.stabilizer_of_point(0).len(), 6);
        assert_eq!(fg.closure(&[fg.index_of(&cyc(4)).unwrap()]).len(), 4);
    }

    #[test]
    fn orbits_and_words() {
        let a = Perm::from_vec(vec![1, 2, 0, 3, 4, 5]);
        let b = Perm::from_vec(vec![0, 1, 2, 4, 3, 5]);
        let g = PermGroup::new(6, vec![a.clone(), b.clone()]).unwrap();
        let part = g.orbit_partition(None);
        assert_eq!(part.orbits, vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        let word = part.word_to(2);
        let mut x = 0;
        for gi in word {
            x = g.generators()[gi].apply(x);
        }
        assert_eq!(x, 2);
        assert_eq!(g.set_orbit(&[0, 3], 100).unwrap().len(), 6);
        assert!(g.set_orbit(&[0, 3], 3).is_err());
    }

    #[test]
    fn perm_order_and_inverse() {
        let p = Perm::from_vec(vec![1, 0, 3, 4, 2]);
        assert_eq!(p.order(), 6);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(Perm::try_from_vec(vec![0, 0]).is_err());
    }
}
