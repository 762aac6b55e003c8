use std::collections::HashMap;

use crate::error::Result;
use crate::plane::PlaneCtx;

use super::matrix::Mat3;
use super::perm::{Perm, PermGroup};

/// Relabels permutations of a larger set onto an invariant subset, in the
/// order the subset is listed.
pub fn induced(perms: &[Perm], domain: &[u32]) -> Result<PermGroup> {
    let position: HashMap<u32, u32> = domain.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let gens = perms.iter().map(|p| p.restrict(domain, &position)).collect::<Result<Vec<_>>>()?;
    PermGroup::new(domain.len(), gens)
}

pub fn on_points(plane: &PlaneCtx, gens: &[Mat3], domain: &[u32]) -> Result<PermGroup> {
    let perms: Vec<Perm> = gens.iter().map(|g| g.point_perm(plane)).collect();
    induced(&perms, domain)
}

pub fn on_lines(plane: &PlaneCtx, gens: &[Mat3], domain: &[u32]) -> Result<PermGroup> {
    let perms: Vec<Perm> = gens.iter().map(|g| g.line_perm(plane)).collect();
    induced(&perms, domain)
}

/// The collineation X -> X^p on points and on lines.
pub fn frobenius_perms(plane: &PlaneCtx) -> (Perm, Perm) {
    let pts = (0..plane.num_points() as u32).map(|x| plane.frobenius_point(x, 1)).collect();
    let lines = (0..plane.num_lines() as u32).map(|l| plane.frobenius_line(l, 1)).collect();
    (Perm::from_vec(pts), Perm::from_vec(lines))
}
