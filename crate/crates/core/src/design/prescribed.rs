//! Ready-made search settings: the two nonexistence searches and a general
//! search on the internal points or the external lines.

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::field::FieldCtx;
use crate::group::action::on_lines;
use crate::group::named::psl2_order;
use crate::group::perm::CAYLEY_CAP;
use crate::group::subgroups::{is_dihedral, subgroup_classes, DEFAULT_SUBGROUP_CAP};
use crate::group::sylow::sylow2_even;
use crate::group::{FiniteGroup, Mat3, PermGroup};

use super::construct::{ExternalLines, InternalPoints};
use super::incidence::DesignParams;
use super::search::{search, BlockShape, SearchCaps, SearchOutcome, SearchSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSet {
    Internal,
    External,
}

pub struct Prepared {
    pub q: u32,
    pub points: PointSet,
    pub group: PermGroup,
    pub group_order: usize,
    pub labels: Vec<String>,
    pub subgroups: Vec<PermGroup>,
    pub subgroup_orders: Vec<usize>,
    pub k: usize,
    pub lambda: usize,
    pub shape: BlockShape,
    /// The enumerated group and the element ids of each subgroup, when the
    /// group is small enough to enumerate.
    pub finite: Option<(FiniteGroup, Vec<Vec<u32>>)>,
}

impl Prepared {
    pub fn run(&self) -> Result<SearchOutcome> {
        search(&SearchSpace {
            group: &self.group,
            group_order: self.group_order,
            subgroups: &self.subgroups,
            k: self.k,
            lambda: self.lambda,
            shape: self.shape,
            caps: SearchCaps::default(),
        })
    }
}

pub fn check_points(points: PointSet, q: u32) -> Result<()> {
    let k = FieldCtx::of_order(q)?;
    match points {
        PointSet::Internal if !k.is_odd() => precondition(format!("internal points need odd q, got {q}")),
        PointSet::Internal if q <= 5 => precondition(format!("internal points need q > 5, got {q}")),
        PointSet::External if k.is_odd() => precondition(format!("external lines to a hyperoval need even q, got {q}")),
        PointSet::External if q <= 8 => precondition(format!("external lines need q > 8, got {q}")),
        _ => Ok(()),
    }
}

/// A subgroup of index two in the elementary abelian group `s`, built by
/// adjoining elements until the span has half the order.
pub fn hyperplane(k: &FieldCtx, s: &[Mat3]) -> Vec<Mat3> {
    let mut span = vec![Mat3::identity()];
    for x in s {
        if span.len() * 2 >= s.len() {
            break;
        }
        if !span.contains(x) {
            let shifted: Vec<Mat3> = span.iter().map(|y| y.mul(k, x)).collect();
            span.extend(shifted);
        }
    }
    span.sort();
    span
}

/// PSL(2,q), q even, on the external lines: block stabilizers are a
/// hyperplane of a Sylow 2-subgroup S (one orbit) or S itself (two orbits).
pub fn type1(q: u32) -> Result<Prepared> {
    check_points(PointSet::External, q)?;
    let ext = ExternalLines::new(q)?;
    let k = ext.plane.field();
    let syl = sylow2_even(&ext.plane, &ext.t)?;
    let u = hyperplane(k, &syl.s);
    let subgroups = vec![on_lines(&ext.plane, &u, &ext.lines)?, on_lines(&ext.plane, &syl.s, &ext.lines)?];
    Ok(Prepared {
        q,
        points: PointSet::External,
        labels: ext.labels(),
        group: ext.action,
        group_order: psl2_order(q),
        subgroups,
        subgroup_orders: vec![u.len(), syl.s.len()],
        k: q as usize / 2,
        lambda: 2,
        shape: BlockShape::OneOrTwoOrbits,
        finite: None,
    })
}

/// PSL(2,q), q odd, on the internal points, with dihedral block stabilizers
/// of order q - 1.
pub fn type2(q: u32) -> Result<Prepared> {
    check_points(PointSet::Internal, q)?;
    let inner = InternalPoints::new(q)?;
    let fin = inner.action.enumerate(CAYLEY_CAP)?;
    let target = q as usize - 1;
    let classes = subgroup_classes(&fin, Some(&[target]), DEFAULT_SUBGROUP_CAP)?;
    let dihedral: Vec<_> = classes.into_iter().filter(|c| c.order() == target && is_dihedral(&fin, &c.rep)).collect();
    Ok(Prepared {
        q,
        points: PointSet::Internal,
        labels: inner.labels(),
        group_order: fin.order(),
        subgroups: dihedral.iter().map(|c| fin.subgroup_perm_group(&c.generators)).collect(),
        subgroup_orders: vec![target; dihedral.len()],
        group: inner.action,
        k: target,
        lambda: 2,
        shape: BlockShape::OneOrbit,
        finite: Some((fin, dihedral.into_iter().map(|c| c.rep).collect())),
    })
}

/// Any k and λ on either point set. The parameters fix b, and so the block
/// stabilizer order |T|/b for one block orbit or 2|T|/b for two; every
/// subgroup class of those orders is used.
pub fn general(points: PointSet, q: u32, k: usize, lambda: usize) -> Result<Prepared> {
    check_points(points, q)?;
    let (group, labels) = match points {
        PointSet::Internal => {
            let p = InternalPoints::new(q)?;
            let labels = p.labels();
            (p.action, labels)
        }
        PointSet::External => {
            let e = ExternalLines::new(q)?;
            let labels = e.labels();
            (e.action, labels)
        }
    };
    let fin = group.enumerate(CAYLEY_CAP)?;
    let order = fin.order();
    let v = group.degree();
    let mut targets = Vec::new();
    if let Some(p) = DesignParams::derive(v, k, lambda) {
        let per_orbit = if p.b % 2 == 0 { vec![p.b, p.b / 2] } else { vec![p.b] };
        targets.extend(per_orbit.into_iter().filter(|&n| order % n == 0).map(|n| order / n));
    }
    let classes = if targets.is_empty() {
        Vec::new()
    } else {
        subgroup_classes(&fin, Some(&targets), DEFAULT_SUBGROUP_CAP)?
            .into_iter()
            .filter(|c| targets.contains(&c.order()))
            .collect()
    };
    Ok(Prepared {
        q,
        points,
        labels,
        group_order: order,
        subgroups: classes.iter().map(|c| fin.subgroup_perm_group(&c.generators)).collect(),
        subgroup_orders: classes.iter().map(|c| c.order()).collect(),
        group,
        k,
        lambda,
        shape: BlockShape::OneOrTwoOrbits,
        finite: Some((fin, classes.into_iter().map(|c| c.rep).collect())),
    })
}
