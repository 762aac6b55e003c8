use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::plane::{Coords, PlaneCtx};

use super::perm::Perm;

/// A projective transformation: 3x3 matrix modulo scalars, row-major, with
/// the first nonzero entry scaled to 1. Points are row vectors and map as
/// `P -> P M`, so the product `a.mul(b)` acts as "first a, then b".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3(pub [Fe; 9]);

impl Mat3 {
    pub fn identity() -> Self {
        let (o, z) = (Fe::ONE, Fe::ZERO);
        Mat3([o, z, z, z, o, z, z, z, o])
    }

    pub fn from_rows(rows: [[Fe; 3]; 3]) -> Self {
        let [a, b, c] = rows;
        Mat3([a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]])
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Fe {
        self.0[3 * r + c]
    }

    pub fn canonical(self, k: &FieldCtx) -> Option<Self> {
        let lead = *self.0.iter().find(|x| !x.is_zero())?;
        let s = k.inv(lead);
        Some(Mat3(self.0.map(|x| k.mul(x, s))))
    }

    fn raw_mul(&self, k: &FieldCtx, o: &Mat3) -> Mat3 {
        let mut out = [Fe::ZERO; 9];
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = Fe::ZERO;
                for i in 0..3 {
                    acc = k.add(acc, k.mul(self.at(r, i), o.at(i, c)));
                }
                out[3 * r + c] = acc;
            }
        }
        Mat3(out)
    }

    pub fn mul(&self, k: &FieldCtx, o: &Mat3) -> Mat3 {
        self.raw_mul(k, o).canonical(k).expect("product of invertible matrices")
    }

    pub fn det(&self, k: &FieldCtx) -> Fe {
        let m = |r, c| self.at(r, c);
        let t0 = k.mul(m(0, 0), k.sub(k.mul(m(1, 1), m(2, 2)), k.mul(m(1, 2), m(2, 1))));
        let t1 = k.mul(m(0, 1), k.sub(k.mul(m(1, 0), m(2, 2)), k.mul(m(1, 2), m(2, 0))));
        let t2 = k.mul(m(0, 2), k.sub(k.mul(m(1, 0), m(2, 1)), k.mul(m(1, 1), m(2, 0))));
        k.add(k.sub(t0, t1), t2)
    }

    pub fn adjugate(&self, k: &FieldCtx) -> Mat3 {
        let m = |r: usize, c: usize| self.at(r, c);
        let minor = |r0, r1, c0, c1| k.sub(k.mul(m(r0, c0), m(r1, c1)), k.mul(m(r0, c1), m(r1, c0)));
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let v = minor(rs[0], rs[1], cs[0], cs[1]);
            if (r + c) % 2 == 1 {
                k.neg(v)
            } else {
                v
            }
        };
        let mut out = [Fe::ZERO; 9];
        for r in 0..3 {
            for c in 0..3 {
                out[3 * r + c] = cof(c, r);
            }
        }
        Mat3(out)
    }

    pub fn is_invertible(&self, k: &FieldCtx) -> bool {
        !self.det(k).is_zero()
    }

    pub fn inverse(&self, k: &FieldCtx) -> Mat3 {
        self.adjugate(k).canonical(k).expect("inverse of an invertible matrix")
    }

    pub fn pow(&self, k: &FieldCtx, mut e: u64) -> Mat3 {
        let mut base = *self;
        let mut acc = Mat3::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            base = base.mul(k, &base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self, k: &FieldCtx) -> u64 {
        let id = Mat3::identity();
        let mut x = *self;
        let mut n = 1;
        while x != id {
            x = x.mul(k, self);
            n += 1;
        }
        n
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity()
    }

    /// Image of the row vector `x` (not canonicalized).
    pub fn apply_coords(&self, k: &FieldCtx, x: Coords) -> Coords {
        let mut out = [Fe::ZERO; 3];
        for (c, o) in out.iter_mut().enumerate() {
            *o = k.add(k.add(k.mul(x[0], self.at(0, c)), k.mul(x[1], self.at(1, c))), k.mul(x[2], self.at(2, c)));
        }
        out
    }

    pub fn apply_point(&self, plane: &PlaneCtx, p: u32) -> u32 {
        plane.point_index(self.apply_coords(plane.field(), plane.point(p)))
    }

    /// Image of a line: coefficient column `a` maps to `adj(M) a`.
    pub fn apply_line_with_adj(adj: &Mat3, plane: &PlaneCtx, l: u32) -> u32 {
        let k = plane.field();
        let a = plane.line(l);
        let mut out = [Fe::ZERO; 3];
        for (r, o) in out.iter_mut().enumerate() {
            *o = k.add(k.add(k.mul(adj.at(r, 0), a[0]), k.mul(adj.at(r, 1), a[1])), k.mul(adj.at(r, 2), a[2]));
        }
        plane.line_index(out)
    }

    pub fn apply_line(&self, plane: &PlaneCtx, l: u32) -> u32 {
        Self::apply_line_with_adj(&self.adjugate(plane.field()), plane, l)
    }

    pub fn point_perm(&self, plane: &PlaneCtx) -> Perm {
        Perm::from_vec((0..plane.num_points() as u32).map(|p| self.apply_point(plane, p)).collect())
    }

    pub fn line_perm(&self, plane: &PlaneCtx) -> Perm {
        let adj = self.adjugate(plane.field());
        Perm::from_vec((0..plane.num_lines() as u32).map(|l| Self::apply_line_with_adj(&adj, plane, l)).collect())
    }

    /// Entrywise Frobenius power; this conjugates by the field automorphism.
    pub fn frobenius(&self, k: &FieldCtx, m: u32) -> Mat3 {
        Mat3(self.0.map(|x| k.frobenius(x, m))).canonical(k).expect("nonzero")
    }

    pub fn to_rows_int(&self, k: &FieldCtx) -> [[u32; 3]; 3] {
        let e = |i: usize| k.to_int(self.0[i]);
        [[e(0), e(1), e(2)], [e(3), e(4), e(5)], [e(6), e(7), e(8)]]
    }

    pub fn display(&self, k: &FieldCtx) -> String {
        let rows: Vec<String> =
            (0..3).map(|r| (0..3).map(|c| k.display(self.at(r, c))).collect::<Vec<_>>().join(" ")).collect();
        format!("[{}]", rows.join("; "))
    }
}

/// A fully enumerated subgroup of PGL(3,q).
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    field: Arc<FieldCtx>,
    generators: Vec<Mat3>,
    elements: Vec<Mat3>,
    index: HashMap<Mat3, u32>,
}

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

impl MatrixGroup {
    /// Breadth-first closure. Each BFS layer is sorted by canonical matrix
    /// order, so the element numbering is reproducible.
    pub fn generate(field: Arc<FieldCtx>, generators: &[Mat3], cap: usize) -> Result<Self> {
        let k = &*field;
        let mut generators: Vec<Mat3> = generators
            .iter()
            .map(|g| {
                if !g.is_invertible(k) {
                    return Err(Error::Precondition(format!("generator {} is singular", g.display(k))));
                }
                Ok(g.canonical(k).unwrap())
            })
            .collect::<Result<_>>()?;
        generators.dedup();
        let id = Mat3::identity();
        let mut elements = vec![id];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut layer = vec![id];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for x in &layer {
                for g in &generators {
                    let y = x.mul(k, g);
                    if !index.contains_key(&y) {
                        next.push(y);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            for y in &next {
                index.insert(*y, elements.len() as u32);
                elements.push(*y);
            }
            if elements.len() > cap {
                return Err(Error::CapExceeded { what: "group order", cap });
            }
            layer = next;
        }
        Ok(MatrixGroup { field, generators, elements, index })
    }

    /// Wraps an explicitly listed, already closed element set.
    pub fn from_elements(field: Arc<FieldCtx>, generators: Vec<Mat3>, elements: Vec<Mat3>) -> Result<Self> {
        let index: HashMap<Mat3, u32> = elements.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        if index.len() != elements.len() {
            return Err(Error::Precondition("duplicate elements".into()));
        }
        let g = MatrixGroup { field, generators, elements, index };
        let k = &*g.field;
        for a in &g.generators {
            for x in &g.elements {
                if !g.contains(&x.mul(k, a)) {
                    return Err(Error::Precondition("element list is not closed".into()));
                }
            }
        }
        Ok(g)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    pub fn contains(&self, m: &Mat3) -> bool {
        self.index.contains_key(m)
    }

    pub fn index_of(&self, m: &Mat3) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn point_stabilizer(&self, plane: &PlaneCtx, p: u32) -> Vec<Mat3> {
        self.elements.iter().copied().filter(|g| g.apply_point(plane, p) == p).collect()
    }

    pub fn line_stabilizer(&self, plane: &PlaneCtx, l: u32) -> Vec<Mat3> {
        self.elements.iter().copied().filter(|g| g.apply_line(plane, l) == l).collect()
    }

    /// Elements mapping the sorted point set onto itself.
    pub fn set_stabilizer(&self, plane: &PlaneCtx, set: &[u32]) -> Vec<Mat3> {
        self.elements
            .iter()
            .copied()
            .filter(|g| set.iter().all(|&p| set.binary_search(&g.apply_point(plane, p)).is_ok()))
            .collect()
    }

    /// Checks that every element maps the sorted point set onto itself.
    pub fn preserves(&self, plane: &PlaneCtx, set: &[u32]) -> bool {
        self.generators.iter().all(|g| set.iter().all(|&p| set.binary_search(&g.apply_point(plane, p)).is_ok()))
    }
}
