use std::sync::Arc;

use crate::error::{precondition, Error, Result};
use crate::field::FieldCtx;
use crate::group::action::{on_lines, on_points};
use crate::group::named::psl2_group;
use crate::group::sylow::sylow2_even;
use crate::group::{MatrixGroup, PermGroup};
use crate::plane::PlaneCtx;

use super::incidence::{certify_design, Certified, IncidenceStructure};

pub const ORBIT_CAP: usize = 1_000_000;

/// The design whose blocks are the images of `base` under `g`.
pub fn orbit_design(g: &PermGroup, base: &[u32]) -> Result<IncidenceStructure> {
    if base.is_empty() {
        return precondition("base block is empty");
    }
    if base.iter().any(|&x| x as usize >= g.degree()) {
        return precondition("base block has a point outside the domain");
    }
    IncidenceStructure::new(g.degree(), g.set_orbit(base, ORBIT_CAP)?)
}

/// PSL(2,q) acting on the lines external to the regular hyperoval, q even.
pub struct ExternalLines {
    pub plane: PlaneCtx,
    pub t: MatrixGroup,
    /// Line indices, sorted; position in this list is the design point index.
    pub lines: Vec<u32>,
    pub action: PermGroup,
}

impl ExternalLines {
    pub fn new(q: u32) -> Result<Self> {
        let field = Arc::new(FieldCtx::of_order(q)?);
        if field.is_odd() {
            return precondition(format!("external lines to a hyperoval need even q, got {q}"));
        }
        let plane = PlaneCtx::new(field.clone())?;
        let t = psl2_group(field)?;
        let mut lines = plane.hyperoval(&plane.conic())?.external_lines;
        lines.sort_unstable();
        let action = on_lines(&plane, t.generators(), &lines)?;
        Ok(ExternalLines { plane, t, lines, action })
    }

    pub fn labels(&self) -> Vec<String> {
        self.lines.iter().map(|&l| format!("line {}", self.plane.format_coords(self.plane.line(l)))).collect()
    }

    pub fn position(&self, line: u32) -> Option<u32> {
        self.lines.binary_search(&line).ok().map(|i| i as u32)
    }
}

/// PSL(2,q) and PGL(2,q) acting on the internal points of the conic, q odd.
pub struct InternalPoints {
    pub plane: PlaneCtx,
    pub t: MatrixGroup,
    pub points: Vec<u32>,
    pub action: PermGroup,
}

impl InternalPoints {
    pub fn new(q: u32) -> Result<Self> {
        let field = Arc::new(FieldCtx::of_order(q)?);
        if !field.is_odd() {
            return precondition(format!("internal points need odd q, got {q}"));
        }
        let plane = PlaneCtx::new(field.clone())?;
        let t = psl2_group(field)?;
        let mut points = plane.classify_points(&plane.conic())?.internal;
        points.sort_unstable();
        let action = on_points(&plane, t.generators(), &points)?;
        Ok(InternalPoints { plane, t, points, action })
    }

    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|&p| format!("point {}", self.plane.format_coords(self.plane.point(p)))).collect()
    }

    pub fn position(&self, point: u32) -> Option<u32> {
        self.points.binary_search(&point).ok().map(|i| i as u32)
    }
}

#[derive(Clone, Debug)]
pub struct WittBoseShrikhande {
    pub structure: IncidenceStructure,
    pub certified: Certified,
    pub base_block: Vec<u32>,
}

/// Points are the external lines to the hyperoval; the blocks are the
/// T-images of the orbit of one external line under a Sylow 2-subgroup.
pub fn witt_bose_shrikhande(q: u32) -> Result<WittBoseShrikhande> {
    if q % 2 == 1 || q < 8 {
        return precondition(format!("W(q) needs even q >= 8, got {q}"));
    }
    let ext = ExternalLines::new(q)?;
    let syl = sylow2_even(&ext.plane, &ext.t)?;
    let s_action = on_lines(&ext.plane, &syl.s, &ext.lines)?;
    let base_block = s_action.orbit(0);
    let structure = orbit_design(&ext.action, &base_block)?.with_labels(ext.labels())?;
    let certified =
        certify_design(&structure, 1).map_err(|e| Error::Inconsistent(format!("W({q}) is not a linear space: {e}")))?;
    Ok(WittBoseShrikhande { structure, certified, base_block })
}
