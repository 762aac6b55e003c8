use std::collections::BTreeSet;

use serde_json::json;

use crate::design::construct::ExternalLines;
use crate::error::Result;
use crate::field::FieldCtx;
use crate::group::sylow::{elation_data, sylow2_even};
use crate::group::Mat3;
use crate::plane::PlaneCtx;

use super::report::Report;

pub const ITEMS: [&str; 5] = ["Frob.i", "Frob.ii", "Frob.iii", "Frob.iv", "Frob.v"];

fn regular_on(plane: &PlaneCtx, group: &[Mat3], set: &[u32]) -> bool {
    if group.len() != set.len() {
        return false;
    }
    let Some(&x) = set.first() else { return true };
    let images: BTreeSet<u32> = group.iter().map(|g| g.apply_point(plane, x)).collect();
    images.len() == set.len() && images.iter().all(|p| set.contains(p))
}

pub fn frob(q: u32) -> Result<Vec<Report>> {
    if FieldCtx::of_order(q)?.is_odd() {
        return Ok(ITEMS
            .iter()
            .map(|c| Report::skipped(c, q, "q odd: the Sylow 2-subgroup is not elementary abelian of order q"))
            .collect());
    }
    let ext = ExternalLines::new(q)?;
    let plane = &ext.plane;
    let k = plane.field();
    let syl = sylow2_even(plane, &ext.t)?;
    let conic = plane.conic();
    let nucleus = plane.nucleus(&conic)?;
    let qs = q as usize;
    let nontrivial: Vec<&Mat3> = syl.s.iter().filter(|s| !s.is_identity()).collect();
    let mut out = Vec::new();

    let fixes = |p: u32| syl.s.iter().all(|s| s.apply_point(plane, p) == p);
    let fixed_on_conic: Vec<u32> = conic.points().iter().copied().filter(|&p| fixes(p)).collect();
    let rest: Vec<u32> = conic.points().iter().copied().filter(|p| !fixed_on_conic.contains(p)).collect();
    let ok = fixes(nucleus) && fixed_on_conic.len() == 1 && regular_on(plane, &syl.s, &rest);
    out.push(Report::new(
        "Frob.i",
        q,
        ok,
        json!({"fixes_nucleus": true, "fixed_conic_points": 1, "regular_on_rest": true}),
        json!({"fixes_nucleus": fixes(nucleus), "fixed_conic_points": fixed_on_conic.len(), "regular_on_rest": regular_on(plane, &syl.s, &rest)}),
    ).with_witness(|| json!({"kind": "fixed_points", "q": q, "conic_points_fixed": fixed_on_conic})));

    let q_point = fixed_on_conic.first().copied().unwrap_or(syl.q_point);
    let t = plane.join(nucleus, q_point);
    let on_t = plane.points_on(t);
    let pointwise = on_t.iter().all(|&p| fixes(p));
    let mut moved_off_t = None;
    'outer: for s in &nontrivial {
        for p in 0..plane.num_points() as u32 {
            if !plane.incident(p, t) && s.apply_point(plane, p) == p {
                moved_off_t = Some((s.display(k), p));
                break 'outer;
            }
        }
    }
    out.push(Report::new(
        "Frob.ii",
        q,
        pointwise && moved_off_t.is_none(),
        json!({"fixes_t_pointwise": true, "semiregular_off_t": true}),
        json!({"fixes_t_pointwise": pointwise, "semiregular_off_t": moved_off_t.is_none()}),
    ).with_witness(|| json!({"kind": "fixed_point_off_axis", "q": q, "element": moved_off_t.as_ref().map(|w| &w.0), "point": moved_off_t.as_ref().map(|w| w.1)})));

    let mut centers = Vec::new();
    let mut wrong_axis = Vec::new();
    for s in &nontrivial {
        let e = elation_data(plane, s)?;
        if e.axis != t {
            wrong_axis.push(s.display(k));
        }
        centers.push(e.center);
    }
    out.push(
        Report::new(
            "Frob.iii",
            q,
            wrong_axis.is_empty() && centers.len() == qs - 1,
            json!({"involutions_with_axis_t": qs - 1}),
            json!({"involutions_with_axis_t": nontrivial.len() - wrong_axis.len()}),
        )
        .with_witness(|| json!({"kind": "elation_axis", "q": q, "elements": wrong_axis})),
    );

    let rest_t: BTreeSet<u32> = on_t.iter().copied().filter(|&p| p != nucleus && p != q_point).collect();
    let center_set: BTreeSet<u32> = centers.iter().copied().collect();
    let rest_t_vec: Vec<u32> = rest_t.iter().copied().collect();
    let k_regular = regular_on(plane, &syl.k, &rest_t_vec);
    out.push(Report::new(
        "Frob.iv",
        q,
        k_regular && center_set == rest_t && center_set.len() == qs - 1,
        json!({"complement_regular": true, "distinct_centers": qs - 1, "centers_fill_t_minus_NQ": true}),
        json!({"complement_regular": k_regular, "distinct_centers": center_set.len(), "centers_fill_t_minus_NQ": center_set == rest_t}),
    ).with_witness(|| json!({"kind": "centers", "q": q, "centers": center_set, "t_minus_nq": rest_t})));

    let mut sizes = BTreeSet::new();
    let mut kernels = BTreeSet::new();
    let mut bad = None;
    let mut all_transitive = true;
    for (s, &center) in nontrivial.iter().zip(&centers) {
        let e_i: Vec<u32> =
            plane.lines_through(center).iter().copied().filter(|l| ext.position(*l).is_some()).collect();
        sizes.insert(e_i.len());
        let image_of_first: BTreeSet<u32> = syl.s.iter().map(|g| g.apply_line(plane, e_i[0])).collect();
        let transitive = image_of_first.iter().copied().collect::<Vec<_>>() == e_i;
        let kernel: Vec<&Mat3> = syl.s.iter().filter(|g| e_i.iter().all(|&l| g.apply_line(plane, l) == l)).collect();
        kernels.insert(kernel.len());
        all_transitive &= transitive;
        let kernel_ok = kernel.len() == 2 && kernel.iter().any(|g| g == s);
        if (!transitive || !kernel_ok || e_i.len() != qs / 2) && bad.is_none() {
            bad = Some(
                json!({"kind": "external_pencil", "q": q, "center": center, "lines": e_i, "kernel_order": kernel.len()}),
            );
        }
    }
    out.push(
        Report::new(
            "Frob.v",
            q,
            bad.is_none(),
            json!({"external_lines_per_center": [qs / 2], "kernel_orders": [2], "transitive": true}),
            json!({"external_lines_per_center": sizes, "kernel_orders": kernels, "transitive": all_transitive}),
        )
        .with_witness(|| bad.clone().unwrap_or_default()),
    );
    Ok(out)
}
