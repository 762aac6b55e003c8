// Brute-force reference for the block search, written against raw
// permutation images so that it shares nothing with the library's orbit,
// pair-orbit or certification code.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

pub fn k_subsets(v: u32, k: usize) -> Vec<Vec<u32>> {
    fn rec(v: u32, k: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..v {
            cur.push(x);
            rec(v, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(v, k, 0, &mut Vec::new(), &mut out);
    out
}

fn image(gen: &[u32], set: &[u32]) -> Vec<u32> {
    let mut s: Vec<u32> = set.iter().map(|&x| gen[x as usize]).collect();
    s.sort_unstable();
    s
}

/// Orbits of the group generated by `gens` on the k-subsets, each sorted.
pub fn subset_orbits(gens: &[Vec<u32>], v: u32, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut left: BTreeSet<Vec<u32>> = k_subsets(v, k).into_iter().collect();
    let mut out = Vec::new();
    while let Some(first) = left.pop_first() {
        let mut orbit = BTreeSet::from([first.clone()]);
        let mut queue = VecDeque::from([first]);
        while let Some(s) = queue.pop_front() {
            for g in gens {
                let t = image(g, &s);
                if orbit.insert(t.clone()) {
                    left.remove(&t);
                    queue.push_back(t);
                }
            }
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Every pair of points lies in exactly `lambda` blocks.
pub fn is_two_design(blocks: &[Vec<u32>], v: u32, lambda: usize) -> bool {
    (0..v).all(|x| (x + 1..v).all(|y| blocks.iter().filter(|b| b.contains(&x) && b.contains(&y)).count() == lambda))
}

/// All unions of one or two subset orbits forming a 2-(v,k,λ) design, each
/// given by the sorted least members of its orbits.
pub fn brute_designs(gens: &[Vec<u32>], v: u32, k: usize, lambda: usize) -> BTreeSet<Vec<Vec<u32>>> {
    let orbits = subset_orbits(gens, v, k);
    let mut out = BTreeSet::new();
    for i in 0..orbits.len() {
        if is_two_design(&orbits[i], v, lambda) {
            out.insert(vec![orbits[i][0].clone()]);
        }
        for j in i + 1..orbits.len() {
            let both: Vec<Vec<u32>> = orbits[i].iter().chain(&orbits[j]).cloned().collect();
            if is_two_design(&both, v, lambda) {
                let mut keys = vec![orbits[i][0].clone(), orbits[j][0].clone()];
                keys.sort();
                out.insert(keys);
            }
        }
    }
    out
}

pub fn cycle(n: u32) -> Vec<u32> {
    (0..n).map(|i| (i + 1) % n).collect()
}
