use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::design::construct::ExternalLines;
use crate::design::prescribed::{hyperplane, type1, type2};
use crate::design::search::FoundDesign;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::group::named::pgl2_group;
use crate::group::perm::CAYLEY_CAP;
use crate::group::subgroups::{are_conjugate, subgroup_classes, DEFAULT_SUBGROUP_CAP};
use crate::group::sylow::sylow2_even;
use crate::group::Mat3;

use super::conicsol::t0_condition;
use super::report::Report;
use super::typeii::OddSetting;

fn design_witness(q: u32, d: &FoundDesign) -> Value {
    json!({
        "kind": "design",
        "q": q,
        "orbit_keys": d.orbit_keys,
        "stabilizer_orders": d.stabilizer_orders,
        "params": d.certified.params,
    })
}

pub fn soon(q: u32) -> Result<Report> {
    let k = FieldCtx::of_order(q)?;
    if k.is_odd() {
        return Ok(Report::skipped("Soon", q, "q odd: type I needs q even"));
    }
    if q <= 8 {
        return Ok(Report::skipped("Soon", q, "q <= 8 is excluded by the type I hypothesis q > 8"));
    }
    let ext = ExternalLines::new(q)?;
    let plane = &ext.plane;
    let k = plane.field();
    let syl = sylow2_even(plane, &ext.t)?;
    let u = hyperplane(k, &syl.s);
    let conj = |g: &Mat3, set: &[Mat3]| -> Vec<Mat3> {
        let gi = g.inverse(k);
        let mut v: Vec<Mat3> = set.iter().map(|x| gi.mul(k, x).mul(k, g)).collect();
        v.sort();
        v
    };
    let conjugates: BTreeSet<Vec<Mat3>> = syl.k.iter().map(|g| conj(g, &u)).collect();
    let hyperplanes = q as usize - 1;

    let mut observed = json!({
        "hyperplane_order": u.len(),
        "hyperplane_conjugates_under_K": conjugates.len(),
    });
    let mut classes_ok = true;
    if q == 16 {
        let fin = ext.action.enumerate(CAYLEY_CAP)?;
        let classes = subgroup_classes(&fin, Some(&[q as usize / 2, q as usize]), DEFAULT_SUBGROUP_CAP)?;
        let count = |n: usize| classes.iter().filter(|c| c.order() == n).count();
        let (half, full) = (count(q as usize / 2), count(q as usize));
        classes_ok = half == 1 && full == 1;
        observed["subgroup_classes_of_order_q/2"] = json!(half);
        observed["subgroup_classes_of_order_q"] = json!(full);
    }

    let out = type1(q)?.run()?;
    observed["raw_candidates"] = json!(out.raw_candidates);
    observed["distinct_block_orbits"] = json!(out.distinct_orbits);
    observed["pair_orbits"] = json!(out.pair_orbits);
    observed["designs"] = json!(out.designs.len());
    let ok = out.designs.is_empty() && conjugates.len() == hyperplanes && classes_ok;
    Ok(Report::new("Soon", q, ok, json!({"designs": 0, "hyperplane_conjugates_under_K": hyperplanes}), observed)
        .with_witness(|| match out.designs.first() {
            Some(d) => design_witness(q, d),
            None => json!({"kind": "subgroup_classes", "q": q}),
        }))
}

fn odd_hypotheses(claim: &str, q: u32) -> Result<Option<Report>> {
    let k = FieldCtx::of_order(q)?;
    if !k.is_odd() {
        return Ok(Some(Report::skipped(claim, q, "q even: type II needs q odd")));
    }
    if q <= 5 {
        return Ok(Some(Report::skipped(claim, q, "q <= 5 is excluded by the type II hypothesis q > 5")));
    }
    Ok(None)
}

pub fn main_type2(q: u32) -> Result<Report> {
    if let Some(r) = odd_hypotheses("Main", q)? {
        return Ok(r);
    }
    let s = OddSetting::new(q)?;
    let prepared = type2(q)?;
    let (fin, reps) = prepared.finite.as_ref().expect("type II enumerates T");
    let tb_ids: Vec<u32> = {
        let gens: Vec<u32> = s
            .tb_action()?
            .generators()
            .iter()
            .map(|p| fin.index_of(p).ok_or_else(|| Error::Inconsistent("T_B is not inside T".into())))
            .collect::<Result<_>>()?;
        fin.closure(&gens)
    };
    let tb_class = reps.iter().position(|rep| are_conjugate(fin, rep, &tb_ids));
    let out = prepared.run()?;
    let ok = out.designs.is_empty() && tb_class.is_some();
    Ok(Report::new(
        "Main",
        q,
        ok,
        json!({"designs": 0, "t_b_among_dihedral_classes": true}),
        json!({
            "dihedral_classes_of_order_q-1": reps.len(),
            "t_b_among_dihedral_classes": tb_class.is_some(),
            "raw_candidates": out.raw_candidates,
            "distinct_block_orbits": out.distinct_orbits,
            "pair_orbits": out.pair_orbits,
            "designs": out.designs.len(),
        }),
    )
    .with_witness(|| match out.designs.first() {
        Some(d) => design_witness(q, d),
        None => json!({"kind": "t_b_class", "q": q}),
    }))
}

fn pair_cover(v: usize, blocks: &[Vec<u32>]) -> Vec<u32> {
    let mut cover = vec![0u32; v * v];
    for blk in blocks {
        for (i, &x) in blk.iter().enumerate() {
            for &y in &blk[i + 1..] {
                cover[x as usize * v + y as usize] += 1;
            }
        }
    }
    cover
}

/// For q ≡ 3 (mod 4) and each candidate block C_h*, h ∈ 1 + Q+: every pair
/// A_t1 = (ω^{2 t1}, 0, 1), A_t2 whose difference t0 = t1 - t2 meets the
/// condition on t0 lies in no block of C_h*^T or in at least four.
pub fn main_mod4(q: u32) -> Result<Report> {
    if let Some(r) = odd_hypotheses("Main.mod4", q)? {
        return Ok(r);
    }
    if q % 4 != 3 {
        return Ok(Report::skipped("Main.mod4", q, "q is not 3 mod 4"));
    }
    let s = OddSetting::new(q)?;
    let k = s.plane().field();
    let t = &s.inner.action;
    let v = t.degree();
    let half = (q as i64 - 1) / 2;
    let a: Vec<u32> = (1..=half)
        .map(|i| s.inner.position(s.point([k.exp(2 * i), Fe::ZERO, Fe::ONE])).expect("O_inf is internal"))
        .collect();
    let mut rows = Vec::new();
    let mut bad = None;
    for h in s.h_values(Some(1), None) {
        let b = s.positions(&s.c_star(h)).expect("C_h* is internal");
        let blocks = t.set_orbit(&b, 1_000_000)?;
        let cover = pair_cover(v, &blocks);
        let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
        for t1 in 1..=half {
            for t2 in 1..=half {
                let w = k.exp(t1 - t2);
                if t1 == t2 || w == Fe::ONE || !t0_condition(k, h, w) {
                    continue;
                }
                let (x, y) = (a[t1 as usize - 1].min(a[t2 as usize - 1]), a[t1 as usize - 1].max(a[t2 as usize - 1]));
                let c = cover[x as usize * v + y as usize];
                *hist.entry(c).or_default() += 1;
                if (1..4).contains(&c) && bad.is_none() {
                    bad = Some(
                        json!({"kind": "pair_coverage", "q": q, "h": k.to_int(h), "t1": t1, "t2": t2, "coverage": c}),
                    );
                }
            }
        }
        rows.push(json!({"h": k.to_int(h), "blocks": blocks.len(), "qualifying_pair_coverage": hist}));
    }
    Ok(Report::new(
        "Main.mod4",
        q,
        bad.is_none(),
        json!({"qualifying_pair_coverage": "0 or at least 4"}),
        json!({"blocks": rows}),
    )
    .with_witness(|| bad.clone().unwrap_or(Value::Null)))
}

/// For q ≡ 1 (mod 4) and each candidate block shape B, the images of B under
/// τ_ξ γ_c0 α^{2u} with c0 = (ξ^-1 - ξ)/2, ξ ∈ {1, ω}, 1 <= u <= (q-1)/2
/// number (q-1)/2.
pub fn main_closure(q: u32) -> Result<Report> {
    if let Some(r) = odd_hypotheses("Main.closure", q)? {
        return Ok(r);
    }
    if q % 4 != 1 {
        return Ok(Report::skipped("Main.closure", q, "q is not 1 mod 4"));
    }
    let s = OddSetting::new(q)?;
    let k = s.plane().field();
    let x = pgl2_group(s.plane().field_arc().clone())?;
    let half = (q - 1) / 2;
    let two = k.from_u32(2);
    let mut shapes: Vec<(Value, Vec<u32>)> = Vec::new();
    for h in s.h_values(Some(-1), None) {
        shapes.push((json!({"shape": "conic", "h": k.to_int(h)}), s.c_star(h)));
    }
    for (h, m) in s.mixed_pairs() {
        let hp = k.frobenius(h, m);
        for i in [1i8, -1] {
            for j in [1i8, -1] {
                let mut b = s.o_h(h, i);
                b.extend(s.o_h(hp, j));
                b.sort_unstable();
                shapes.push((json!({"shape": "mixed", "h": k.to_int(h), "m": m, "i": i, "j": j}), b));
            }
        }
    }
    let mut rows = Vec::new();
    let mut bad = None;
    for (mut row, b) in shapes {
        let mut images = BTreeSet::new();
        for xi in [Fe::ONE, k.omega()] {
            let c0 = k.div(k.sub(k.inv(xi), xi), two);
            for u in 1..=half {
                images.insert(s.image(&s.psi(xi, c0, u)?, &b));
            }
        }
        row["distinct_images"] = json!(images.len());
        row["pgl_stabilizer_order"] = json!(x.set_stabilizer(s.plane(), &b).len());
        if images.len() != half as usize && bad.is_none() {
            bad = Some(row.clone());
        }
        rows.push(row);
    }
    Ok(Report::new("Main.closure", q, bad.is_none(), json!({"distinct_images": half}), json!({"shapes": rows}))
        .with_witness(|| json!({"kind": "closure_count", "q": q, "shape": bad})))
}
