//! PG(2,q) with dense point and line indices.
//!
//! Points are row vectors canonicalized so the last nonzero coordinate is 1.
//! Lines are coefficient triples with the same canonical form; a point `x`
//! lies on a line `a` when `a0 x0 + a1 x1 + a2 x2 = 0`. Because incidence is
//! the same bilinear form on both sides, the index scheme is shared.

mod conic;

use std::fmt::Write as _;
use std::sync::Arc;

pub use conic::{Conic, ConicKind, Hyperoval, LineClass, PencilParam, PointClass, PointClasses};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

pub const MAX_PLANE_ORDER: u32 = 128;

pub type Coords = [Fe; 3];

#[derive(Clone, Debug)]
pub struct PlaneCtx {
    field: Arc<FieldCtx>,
    points: Vec<Coords>,
    lines: Vec<Coords>,
    line_points: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
}

/// Scales `x` so its last nonzero entry is 1; `None` for the zero vector.
pub fn canonical(k: &FieldCtx, x: Coords) -> Option<Coords> {
    let last = x.iter().rposition(|c| !c.is_zero())?;
    let s = k.inv(x[last]);
    Some([k.mul(x[0], s), k.mul(x[1], s), k.mul(x[2], s)])
}

pub fn cross(k: &FieldCtx, a: Coords, b: Coords) -> Coords {
    [
        k.sub(k.mul(a[1], b[2]), k.mul(a[2], b[1])),
        k.sub(k.mul(a[2], b[0]), k.mul(a[0], b[2])),
        k.sub(k.mul(a[0], b[1]), k.mul(a[1], b[0])),
    ]
}

pub fn dot(k: &FieldCtx, a: Coords, b: Coords) -> Fe {
    k.add(k.add(k.mul(a[0], b[0]), k.mul(a[1], b[1])), k.mul(a[2], b[2]))
}

impl PlaneCtx {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self> {
        let q = field.q();
        if q > MAX_PLANE_ORDER {
            return Err(Error::CapExceeded { what: "plane order", cap: MAX_PLANE_ORDER as usize });
        }
        let n = (q * q + q + 1) as usize;
        let mut points = vec![[Fe::ZERO; 3]; n];
        for x0 in field.elements() {
            for x1 in field.elements() {
                let c = [x0, x1, Fe::ONE];
                points[Self::index_of_canonical(q, c)] = c;
            }
            let c = [x0, Fe::ONE, Fe::ZERO];
            points[Self::index_of_canonical(q, c)] = c;
        }
        points[n - 1] = [Fe::ONE, Fe::ZERO, Fe::ZERO];

        let mut plane =
            PlaneCtx { field, lines: points.clone(), points, line_points: Vec::new(), point_lines: Vec::new() };
        let on: Vec<Vec<u32>> = (0..n).map(|i| plane.solutions(plane.points[i])).collect();
        plane.line_points = on.clone();
        plane.point_lines = on;
        Ok(plane)
    }

    pub fn from_order(q: u32) -> Result<Self> {
        Self::new(Arc::new(FieldCtx::of_order(q)?))
    }

    fn index_of_canonical(q: u32, c: Coords) -> usize {
        let q = q as usize;
        if !c[2].is_zero() {
            c[0].index() * q + c[1].index()
        } else if !c[1].is_zero() {
            q * q + c[0].index()
        } else {
            q * q + q
        }
    }

    /// Sorted indices of the projective points orthogonal to `a`.
    fn solutions(&self, a: Coords) -> Vec<u32> {
        let k = &*self.field;
        let basis = [[Fe::ONE, Fe::ZERO, Fe::ZERO], [Fe::ZERO, Fe::ONE, Fe::ZERO], [Fe::ZERO, Fe::ZERO, Fe::ONE]];
        let mut span: Vec<Coords> = Vec::with_capacity(2);
        for e in basis {
            let v = cross(k, a, e);
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            if span.iter().all(|u| cross(k, *u, v).iter().any(|c| !c.is_zero())) {
                span.push(v);
            }
            if span.len() == 2 {
                break;
            }
        }
        let (u, w) = (span[0], span[1]);
        let mut out = vec![self.point_index(u)];
        for t in k.elements() {
            let v = [k.add(w[0], k.mul(t, u[0])), k.add(w[1], k.mul(t, u[1])), k.add(w[2], k.mul(t, u[2]))];
            out.push(self.point_index(v));
        }
        out.sort_unstable();
        out
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn point(&self, i: u32) -> Coords {
        self.points[i as usize]
    }

    pub fn line(&self, i: u32) -> Coords {
        self.lines[i as usize]
    }

    /// Index of the point with homogeneous coordinates `x` (any scaling).
    pub fn point_index(&self, x: Coords) -> u32 {
        let c = canonical(&self.field, x).expect("zero vector is not a projective point");
        Self::index_of_canonical(self.q(), c) as u32
    }

    pub fn line_index(&self, a: Coords) -> u32 {
        self.point_index(a)
    }

    pub fn points_on(&self, line: u32) -> &[u32] {
        &self.line_points[line as usize]
    }

    pub fn lines_through(&self, point: u32) -> &[u32] {
        &self.point_lines[point as usize]
    }

    pub fn incident(&self, point: u32, line: u32) -> bool {
        dot(&self.field, self.point(point), self.line(line)).is_zero()
    }

    pub fn join(&self, p: u32, r: u32) -> u32 {
        assert_ne!(p, r, "join of a point with itself");
        self.line_index(cross(&self.field, self.point(p), self.point(r)))
    }

    pub fn meet(&self, l: u32, m: u32) -> u32 {
        assert_ne!(l, m, "meet of a line with itself");
        self.point_index(cross(&self.field, self.line(l), self.line(m)))
    }

    /// The image of a point under the Frobenius collineation raised to `m`.
    pub fn frobenius_point(&self, p: u32, m: u32) -> u32 {
        let k = &*self.field;
        let c = self.point(p);
        self.point_index([k.frobenius(c[0], m), k.frobenius(c[1], m), k.frobenius(c[2], m)])
    }

    pub fn frobenius_line(&self, l: u32, m: u32) -> u32 {
        self.frobenius_point(l, m)
    }

    /// Polar line of `p` with respect to `X0 X2 - h X1^2 = 0`, q odd.
    pub fn polar_wrt(&self, h: Fe, p: u32) -> Result<u32> {
        let k = &*self.field;
        if !k.is_odd() {
            return Err(Error::Precondition("polarity needs odd q".into()));
        }
        let half = k.inv(k.from_u32(2));
        let x = self.point(p);
        Ok(self.line_index([k.mul(x[2], half), k.neg(k.mul(h, x[1])), k.mul(x[0], half)]))
    }

    pub fn pole_wrt(&self, h: Fe, line: u32) -> Result<u32> {
        let k = &*self.field;
        if !k.is_odd() {
            return Err(Error::Precondition("polarity needs odd q".into()));
        }
        let two = k.from_u32(2);
        let a = self.line(line);
        Ok(self.point_index([k.mul(a[2], two), k.neg(k.div(a[1], h)), k.mul(a[0], two)]))
    }

    /// The polar line of `p` under the polarity of the conic X0 X2 = X1^2.
    pub fn polarity_image(&self, p: u32) -> Result<u32> {
        self.polar_wrt(Fe::ONE, p)
    }

    pub fn pole(&self, line: u32) -> Result<u32> {
        self.pole_wrt(Fe::ONE, line)
    }

    pub fn format_coords(&self, c: Coords) -> String {
        let k = &*self.field;
        format!("({},{},{})", k.display(c[0]), k.display(c[1]), k.display(c[2]))
    }

    /// Text dump: `PG2 q`, then the sorted point indices of every line.
    pub fn dump(&self) -> String {
        let mut out = format!("PG2 {}\n", self.q());
        for pts in &self.line_points {
            let row: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// Reads a plane dump back as `(q, lines)`.
pub fn parse_dump(text: &str) -> Result<(u32, Vec<Vec<u32>>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty plane dump".into()))?;
    let q: u32 = header
        .strip_prefix("PG2 ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad plane dump header {header:?}")))?;
    let rows = lines
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let n = (q * q + q + 1) as usize;
    if rows.len() != n || rows.iter().any(|r| r.len() != q as usize + 1) {
        return Err(Error::Parse(format!("plane dump for q={q} must have {n} lines of {} points", q + 1)));
    }
    Ok((q, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_plane_sizes() {
        let fano = PlaneCtx::from_order(2).unwrap();
        assert_eq!((fano.num_points(), fano.num_lines()), (7, 7));
        let p5 = PlaneCtx::from_order(5).unwrap();
        assert_eq!(p5.num_points(), 31);
        assert!((0..31).all(|l| p5.points_on(l).len() == 6));
        let p8 = PlaneCtx::from_order(8).unwrap();
        assert_eq!((p8.num_points(), p8.num_lines()), (73, 73));
        assert!(PlaneCtx::from_order(131).is_err());
    }

    #[test]
    fn adjacency_matches_incidence() {
        for q in [3, 4, 9] {
            let pl = PlaneCtx::from_order(q).unwrap();
            for l in 0..pl.num_lines() as u32 {
                let by_scan: Vec<u32> = (0..pl.num_points() as u32).filter(|&p| pl.incident(p, l)).collect();
                assert_eq!(pl.points_on(l), by_scan.as_slice());
            }
            for p in 0..pl.num_points() as u32 {
                assert!(pl.lines_through(p).iter().all(|&l| pl.incident(p, l)));
                assert_eq!(pl.lines_through(p).len(), q as usize + 1);
            }
        }
    }

    #[test]
    fn canonical_coordinates_round_trip() {
        let pl = PlaneCtx::from_order(7).unwrap();
        for i in 0..pl.num_points() as u32 {
            let c = pl.point(i);
            assert_eq!(pl.point_index(c), i);
            let k = pl.field();
            let scaled = c.map(|x| k.mul(x, k.from_int(3)));
            assert_eq!(pl.point_index(scaled), i);
        }
        let o = pl.point_index([Fe::ZERO, Fe::ZERO, Fe::ONE]);
        assert_eq!(o, 0);
        assert_eq!(pl.point(pl.num_points() as u32 - 1), [Fe::ONE, Fe::ZERO, Fe::ZERO]);
    }

    #[test]
    fn polarity_examples() {
        let pl = PlaneCtx::from_order(5).unwrap();
        let o = pl.point_index([Fe::ZERO, Fe::ZERO, Fe::ONE]);
        let x0 = pl.line_index([Fe::ONE, Fe::ZERO, Fe::ZERO]);
        assert_eq!(pl.polarity_image(o).unwrap(), x0);
        let p7 = PlaneCtx::from_order(7).unwrap();
        for p in 0..p7.num_points() as u32 {
            let l = p7.polarity_image(p).unwrap();
            assert_eq!(p7.pole(l).unwrap(), p);
        }
        assert!(PlaneCtx::from_order(4).unwrap().polarity_image(0).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let pl = PlaneCtx::from_order(3).unwrap();
        let text = pl.dump();
        assert!(text.starts_with("PG2 3\n"));
        let (q, rows) = parse_dump(&text).unwrap();
        assert_eq!(q, 3);
        assert_eq!(rows[5], pl.points_on(5));
        assert!(parse_dump("PG2 3\n0 1\n").is_err());
    }
}
