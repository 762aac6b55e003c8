use crate::error::{precondition, Error, Result};
use crate::plane::PlaneCtx;

use super::matrix::{Mat3, MatrixGroup};

/// A Sylow 2-subgroup S of T (q even), taken as the involutions of the
/// stabilizer of a conic point Q, together with the cyclic complement K
/// fixing a second conic point.
#[derive(Clone, Debug)]
pub struct Sylow2 {
    pub q_point: u32,
    pub s: Vec<Mat3>,
    pub k: Vec<Mat3>,
    pub k_generator: Mat3,
}

/// Uses Q = O and takes K inside the stabilizer of P_inf.
pub fn sylow2_even(plane: &PlaneCtx, t: &MatrixGroup) -> Result<Sylow2> {
    let k = plane.field();
    if k.is_odd() {
        return precondition("Sylow 2-subgroup data requires even q");
    }
    let q = plane.q() as usize;
    let o = plane.origin();
    let pinf = plane.p_infinity();
    let t_o = t.point_stabilizer(plane, o);
    let s: Vec<Mat3> = t_o.iter().copied().filter(|g| g.mul(k, g).is_identity()).collect();
    let ks: Vec<Mat3> = t_o.iter().copied().filter(|g| g.apply_point(plane, pinf) == pinf).collect();
    if s.len() != q || ks.len() != q - 1 {
        return Err(Error::Inconsistent(format!(
            "stabilizer of O has {} involutions+1 and {} elements fixing P_inf",
            s.len(),
            ks.len()
        )));
    }
    let k_generator = *ks
        .iter()
        .find(|g| g.order(k) == (q - 1) as u64)
        .ok_or_else(|| Error::Inconsistent("complement is not cyclic".into()))?;
    Ok(Sylow2 { q_point: o, s, k: ks, k_generator })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elation {
    pub center: u32,
    pub axis: u32,
}

/// Center and axis of an involutory elation, checking that the fixed points
/// are exactly the axis and the fixed lines exactly the pencil at the center.
pub fn elation_data(plane: &PlaneCtx, sigma: &Mat3) -> Result<Elation> {
    let k = plane.field();
    if k.is_odd() {
        return precondition("involutions are elations only for even q");
    }
    if sigma.is_identity() || !sigma.mul(k, sigma).is_identity() {
        return precondition(format!("{} is not an involution", sigma.display(k)));
    }
    let fixed_points: Vec<u32> = (0..plane.num_points() as u32).filter(|&p| sigma.apply_point(plane, p) == p).collect();
    let fixed_lines: Vec<u32> = (0..plane.num_lines() as u32).filter(|&l| sigma.apply_line(plane, l) == l).collect();
    let axes: Vec<u32> = fixed_lines
        .iter()
        .copied()
        .filter(|&l| plane.points_on(l).iter().all(|p| fixed_points.binary_search(p).is_ok()))
        .collect();
    let [axis] = axes[..] else {
        return Err(Error::Inconsistent(format!("{} lines are fixed pointwise", axes.len())));
    };
    let centers: Vec<u32> = fixed_points
        .iter()
        .copied()
        .filter(|&p| plane.lines_through(p).iter().all(|l| fixed_lines.binary_search(l).is_ok()))
        .collect();
    let [center] = centers[..] else {
        return Err(Error::Inconsistent(format!("{} points have all lines through them fixed", centers.len())));
    };
    let mut on_axis = plane.points_on(axis).to_vec();
    on_axis.sort_unstable();
    let mut through_center = plane.lines_through(center).to_vec();
    through_center.sort_unstable();
    if on_axis != fixed_points || through_center != fixed_lines || !plane.incident(center, axis) {
        return Err(Error::Inconsistent("extra fixed elements beyond the axis and centre".into()));
    }
    Ok(Elation { center, axis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::psl2_group;

    #[test]
    fn sylow_data_q8() {
        let pl = PlaneCtx::from_order(8).unwrap();
        let t = psl2_group(pl.field_arc().clone()).unwrap();
        let syl = sylow2_even(&pl, &t).unwrap();
        assert_eq!(syl.s.len(), 8);
        assert_eq!(syl.k.len(), 7);
        let axes: Vec<u32> =
            syl.s.iter().filter(|g| !g.is_identity()).map(|g| elation_data(&pl, g).unwrap().axis).collect();
        assert!(axes.windows(2).all(|w| w[0] == w[1]));
        assert!(elation_data(&pl, &Mat3::identity()).is_err());
    }

    #[test]
    fn elation_axis_has_q_plus_one_points() {
        let pl = PlaneCtx::from_order(4).unwrap();
        let t = psl2_group(pl.field_arc().clone()).unwrap();
        let k = pl.field();
        for g in t.elements().iter().filter(|g| !g.is_identity() && g.mul(k, g).is_identity()) {
            let e = elation_data(&pl, g).unwrap();
            assert_eq!(pl.points_on(e.axis).len(), 5);
        }
    }
}
