use serde::{Deserialize, Serialize};

use super::PlaneCtx;
use crate::error::{Error, Result};
use crate::field::Fe;

/// Selects a member of the pencil X0 X2 - h X1^2 = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PencilParam {
    Finite(Fe),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicKind {
    Irreducible,
    SimplyDegenerate,
    DoublyDegenerate,
}

#[derive(Clone, Debug)]
pub struct Conic {
    pub param: PencilParam,
    pub kind: ConicKind,
    points: Vec<u32>,
}

impl Conic {
    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn contains(&self, p: u32) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineClass {
    External,
    Tangent,
    Secant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointClass {
    Internal,
    OnConic,
    External,
}

#[derive(Clone, Debug, Default)]
pub struct PointClasses {
    pub internal: Vec<u32>,
    pub on_conic: Vec<u32>,
    pub external: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Hyperoval {
    pub points: Vec<u32>,
    pub nucleus: u32,
    pub external_lines: Vec<u32>,
}

impl PlaneCtx {
    /// The point O = (0,0,1).
    pub fn origin(&self) -> u32 {
        self.point_index([Fe::ZERO, Fe::ZERO, Fe::ONE])
    }

    /// The point P_inf = (1,0,0).
    pub fn p_infinity(&self) -> u32 {
        self.point_index([Fe::ONE, Fe::ZERO, Fe::ZERO])
    }

    pub fn pencil_conic(&self, param: PencilParam) -> Conic {
        let k = self.field();
        let on = |c: [Fe; 3]| match param {
            PencilParam::Infinity => c[1].is_zero(),
            PencilParam::Finite(h) => k.sub(k.mul(c[0], c[2]), k.mul(h, k.mul(c[1], c[1]))).is_zero(),
        };
        let points = (0..self.num_points() as u32).filter(|&p| on(self.point(p))).collect();
        let kind = match param {
            PencilParam::Infinity => ConicKind::DoublyDegenerate,
            PencilParam::Finite(h) if h.is_zero() => ConicKind::SimplyDegenerate,
            PencilParam::Finite(_) => ConicKind::Irreducible,
        };
        Conic { param, kind, points }
    }

    /// The conic X0 X2 = X1^2.
    pub fn conic(&self) -> Conic {
        self.pencil_conic(PencilParam::Finite(Fe::ONE))
    }

    /// C_h with O and P_inf removed.
    pub fn punctured(&self, conic: &Conic) -> Vec<u32> {
        let (o, pinf) = (self.origin(), self.p_infinity());
        conic.points().iter().copied().filter(|&p| p != o && p != pinf).collect()
    }

    pub fn intersection_size(&self, line: u32, set: &[u32]) -> usize {
        self.points_on(line).iter().filter(|p| set.binary_search(p).is_ok()).count()
    }

    /// Classifies a line against an arc given as a sorted point list.
    pub fn classify_line(&self, line: u32, arc: &[u32]) -> Result<LineClass> {
        match self.intersection_size(line, arc) {
            0 => Ok(LineClass::External),
            1 => Ok(LineClass::Tangent),
            2 => Ok(LineClass::Secant),
            n => Err(Error::Precondition(format!("not an arc: line {line} meets the set in {n} points"))),
        }
    }

    fn require_irreducible(&self, conic: &Conic) -> Result<()> {
        if conic.kind != ConicKind::Irreducible {
            return Err(Error::Precondition(format!("{:?} conic is degenerate", conic.param)));
        }
        Ok(())
    }

    pub fn tangents(&self, conic: &Conic) -> Vec<u32> {
        (0..self.num_lines() as u32).filter(|&l| self.intersection_size(l, conic.points()) == 1).collect()
    }

    pub fn nucleus(&self, conic: &Conic) -> Result<u32> {
        if self.field().is_odd() {
            return Err(Error::Precondition("tangents of a conic are concurrent only for even q".into()));
        }
        self.require_irreducible(conic)?;
        let tangents = self.tangents(conic);
        let n = self.meet(tangents[0], tangents[1]);
        if tangents.len() != self.q() as usize + 1 || !tangents.iter().all(|&t| self.incident(n, t)) {
            return Err(Error::Inconsistent("tangents are not concurrent".into()));
        }
        Ok(n)
    }

    pub fn hyperoval(&self, conic: &Conic) -> Result<Hyperoval> {
        let nucleus = self.nucleus(conic)?;
        let mut points = conic.points().to_vec();
        points.push(nucleus);
        points.sort_unstable();
        let mut external_lines = Vec::new();
        for l in 0..self.num_lines() as u32 {
            match self.classify_line(l, &points)? {
                LineClass::External => external_lines.push(l),
                LineClass::Secant => {}
                LineClass::Tangent => return Err(Error::Inconsistent(format!("line {l} is tangent to the hyperoval"))),
            }
        }
        Ok(Hyperoval { points, nucleus, external_lines })
    }

    fn pencil_h(&self, conic: &Conic) -> Result<Fe> {
        self.require_irreducible(conic)?;
        match conic.param {
            PencilParam::Finite(h) => Ok(h),
            PencilParam::Infinity => unreachable!(),
        }
    }

    fn class_by_tangents(&self, conic: &Conic, tangent_mask: &[bool], p: u32) -> PointClass {
        if conic.contains(p) {
            return PointClass::OnConic;
        }
        match self.lines_through(p).iter().filter(|&&l| tangent_mask[l as usize]).count() {
            0 => PointClass::Internal,
            _ => PointClass::External,
        }
    }

    fn class_by_polarity(&self, conic: &Conic, h: Fe, p: u32) -> Result<PointClass> {
        let polar = self.polar_wrt(h, p)?;
        Ok(match self.classify_line(polar, conic.points())? {
            LineClass::External => PointClass::Internal,
            LineClass::Tangent => PointClass::OnConic,
            LineClass::Secant => PointClass::External,
        })
    }

    fn tangent_mask(&self, conic: &Conic) -> Vec<bool> {
        let mut mask = vec![false; self.num_lines()];
        for t in self.tangents(conic) {
            mask[t as usize] = true;
        }
        mask
    }

    /// Internal / on-conic / external classification for odd q. The count of
    /// tangents through the point and the polar-line criterion must agree.
    pub fn classify_point(&self, conic: &Conic, p: u32) -> Result<PointClass> {
        if !self.field().is_odd() {
            return Err(Error::Precondition("internal and external points need odd q".into()));
        }
        let h = self.pencil_h(conic)?;
        let mask = self.tangent_mask(conic);
        let a = self.class_by_tangents(conic, &mask, p);
        let b = self.class_by_polarity(conic, h, p)?;
        if a != b {
            return Err(Error::Inconsistent(format!("point {p}: tangent count says {a:?}, polarity says {b:?}")));
        }
        Ok(a)
    }

    pub fn classify_points(&self, conic: &Conic) -> Result<PointClasses> {
        if !self.field().is_odd() {
            return Err(Error::Precondition("internal and external points need odd q".into()));
        }
        let h = self.pencil_h(conic)?;
        let mask = self.tangent_mask(conic);
        let mut out = PointClasses::default();
        for p in 0..self.num_points() as u32 {
            let a = self.class_by_tangents(conic, &mask, p);
            let b = self.class_by_polarity(conic, h, p)?;
            if a != b {
                return Err(Error::Inconsistent(format!("point {p}: tangent count says {a:?}, polarity says {b:?}")));
            }
            match a {
                PointClass::Internal => out.internal.push(p),
                PointClass::OnConic => out.on_conic.push(p),
                PointClass::External => out.external.push(p),
            }
        }
        Ok(out)
    }

    /// Lines meeting the conic in two points.
    pub fn secants(&self, conic: &Conic) -> Vec<u32> {
        (0..self.num_lines() as u32).filter(|&l| self.intersection_size(l, conic.points()) == 2).collect()
    }
}
