use std::collections::BTreeSet;

use serde_json::json;

use crate::error::Result;
use crate::field::{Fe, FieldCtx};
use crate::group::named::{gamma, tau_admissible};
use crate::plane::{canonical, Coords};

use super::report::Report;
use super::typeii::OddSetting;

fn to_plane(s: &OddSetting, orbits: Vec<Vec<u32>>) -> BTreeSet<Vec<u32>> {
    orbits
        .into_iter()
        .map(|o| {
            let mut v: Vec<u32> = o.iter().map(|&i| s.inner.points[i as usize]).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

fn hypotheses(claim: &str, q: u32) -> Result<Option<Report>> {
    let k = FieldCtx::of_order(q)?;
    if !k.is_odd() {
        return Ok(Some(Report::skipped(claim, q, "q even: no internal points")));
    }
    if q <= 5 {
        return Ok(Some(Report::skipped(claim, q, "q <= 5 is excluded by the type II hypothesis q > 5")));
    }
    Ok(None)
}

/// The T_B-orbits on internal points against the stated classification.
pub fn orbit(q: u32) -> Result<Report> {
    if let Some(r) = hypotheses("Orbit", q)? {
        return Ok(r);
    }
    let s = OddSetting::new(q)?;
    let k = s.plane().field();
    let eps = s.eps;
    let tb_orbits = to_plane(&s, s.tb_action()?.orbits());
    let full_h = s.h_values(Some(-eps), Some(-eps));
    let half_h = s.h_values(Some(-eps), Some(eps));

    let o_inf_derived: Vec<Fe> = k.nonzero().filter(|&m| s.is_internal(s.point([m, Fe::ZERO, Fe::ONE]))).collect();
    let convention = if o_inf_derived == s.classes.class(-eps) {
        "Q_{-eps}"
    } else if o_inf_derived == s.classes.class(eps) {
        "Q_{eps}"
    } else {
        "neither"
    };
    let internal_h: Vec<Fe> =
        k.nonzero().filter(|&h| h != Fe::ONE && s.c_star(h).iter().all(|&p| s.is_internal(p))).collect();
    let criterion_h = s.h_values(Some(-eps), None);

    let mut expected: BTreeSet<Vec<u32>> = full_h.iter().map(|&h| s.c_star(h)).collect();
    expected.insert(s.o_inf(-eps));
    for &h in &half_h {
        expected.insert(s.o_h(h, 1));
        expected.insert(s.o_h(h, -1));
    }

    let mut xb_ok = true;
    let mut xb_split = 0;
    if eps == -1 {
        let xb_action = crate::group::action::on_points(s.plane(), s.xb.generators(), &s.inner.points)?;
        let split: BTreeSet<Vec<u32>> = to_plane(&s, xb_action.orbits())
            .into_iter()
            .filter(|o| o.len() == q as usize - 1 && !tb_orbits.contains(o))
            .collect();
        xb_split = split.len();
        let want: BTreeSet<Vec<u32>> = half_h.iter().map(|&h| s.c_star(h)).collect();
        xb_ok = split == want;
    }

    let count = |len: usize, set: &BTreeSet<Vec<u32>>| set.iter().filter(|o| o.len() == len).count();
    let full_len = q as usize - 1;
    let half_len = full_len / 2;
    let o_inf = s.o_inf(-eps);
    let ok = tb_orbits == expected && xb_ok && convention == "Q_{-eps}" && internal_h == criterion_h;
    let expected_json = json!({
        "full_orbits": full_h.len(),
        "half_orbits": 1 + 2 * half_h.len(),
        "o_infinity": half_len,
        "xb_orbits_splitting": if eps == -1 { half_h.len() } else { 0 },
        "o_infinity_convention": "Q_{-eps}",
    });
    let observed = json!({
        "full_orbits": count(full_len, &tb_orbits),
        "half_orbits": count(half_len, &tb_orbits),
        "o_infinity": if tb_orbits.contains(&o_inf) { o_inf.len() } else { 0 },
        "xb_orbits_splitting": xb_split,
        "o_infinity_convention": convention,
        "orbit_count": tb_orbits.len(),
    });
    Ok(Report::new("Orbit", q, ok, expected_json, observed).with_witness(|| {
        let unexpected: Vec<_> = tb_orbits.difference(&expected).cloned().collect();
        let missing: Vec<_> = expected.difference(&tb_orbits).cloned().collect();
        json!({"kind": "orbit_mismatch", "q": q, "unexpected": unexpected, "missing": missing})
    }))
}

fn formula_oc(k: &FieldCtx, h: Fe, c: Fe, mu: Fe) -> Coords {
    let two = k.from_u32(2);
    let hm = k.mul(h, mu);
    [
        k.mul(hm, mu),
        k.mul(k.add(k.mul(c, hm), Fe::ONE), mu),
        k.add(k.add(k.mul(k.mul(c, c), k.mul(hm, mu)), k.mul(two, k.mul(c, mu))), Fe::ONE),
    ]
}

fn formula_oh(k: &FieldCtx, h: Fe, xi: Fe, c: Fe, w2u: Fe, mu: Fe) -> Coords {
    let two = k.from_u32(2);
    let m2 = k.mul(mu, mu);
    let cx1 = k.sub(k.mul(c, xi), Fe::ONE);
    let cpx = k.add(c, xi);
    let x0 = k.mul(w2u, k.add(k.add(k.mul(h, m2), k.mul(two, k.mul(xi, mu))), k.mul(xi, xi)));
    let x1 = k.add(
        k.add(k.mul(k.mul(h, cpx), m2), k.mul(k.sub(k.add(k.mul(xi, xi), k.mul(two, k.mul(c, xi))), Fe::ONE), mu)),
        k.mul(xi, cx1),
    );
    let x2 = k.mul(
        k.inv(w2u),
        k.add(k.add(k.mul(k.mul(h, k.mul(cpx, cpx)), m2), k.mul(two, k.mul(k.mul(cx1, cpx), mu))), k.mul(cx1, cx1)),
    );
    [x0, x1, x2]
}

fn formula_set(s: &OddSetting, pts: impl Iterator<Item = Coords>) -> Option<Vec<u32>> {
    let k = s.plane().field();
    let mut v = pts.map(|x| canonical(k, x).map(|c| s.point(c))).collect::<Option<Vec<_>>>()?;
    v.sort_unstable();
    Some(v)
}

struct Tuple {
    h: Fe,
    i: i8,
    map: &'static str,
    xi: Option<Fe>,
    c: Fe,
    u: u32,
    image: Vec<u32>,
    formula: Option<Vec<u32>>,
}

/// Every image O_{h,i}^{γ_c} and O_{h,i}^{τ_ξ γ_c α^{2u}} together with its
/// displayed coordinate family, for all h ≠ 0, i, c, admissible ξ and u.
fn images(s: &OddSetting) -> Result<Vec<Tuple>> {
    let k = s.plane().field();
    let w = k.omega();
    let half = (s.q() - 1) / 2;
    let mut out = Vec::new();
    for h in k.nonzero() {
        for i in [1i8, -1] {
            let base = s.o_h(h, i);
            let mus = s.classes.class(i);
            for c in k.elements() {
                let image = s.image(&gamma(k, c), &base);
                let formula = formula_set(s, mus.iter().map(|&m| formula_oc(k, h, c, m)));
                out.push(Tuple { h, i, map: "gamma", xi: None, c, u: 0, image, formula });
                for xi in k.nonzero().filter(|&x| tau_admissible(k, x)) {
                    for u in 1..=half {
                        let w2u = k.pow(w, 2 * u as i64);
                        let image = s.image(&s.psi(xi, c, u)?, &base);
                        let formula = formula_set(s, mus.iter().map(|&m| formula_oh(k, h, xi, c, w2u, m)));
                        out.push(Tuple { h, i, map: "tau_gamma_alpha", xi: Some(xi), c, u, image, formula });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn tuple_json(s: &OddSetting, t: &Tuple) -> serde_json::Value {
    let k = s.plane().field();
    json!({
        "h": k.to_int(t.h), "i": t.i, "map": t.map, "xi": t.xi.map(|x| k.to_int(x)),
        "c": k.to_int(t.c), "u": t.u, "image": t.image, "formula": t.formula,
    })
}

/// Pointwise images of O_{h,i} against the displayed coordinate families.
pub fn orbit_param(q: u32) -> Result<Report> {
    if let Some(r) = hypotheses("Orbit.param", q)? {
        return Ok(r);
    }
    let s = OddSetting::new(q)?;
    let tuples = images(&s)?;
    let bad: Vec<&Tuple> = tuples.iter().filter(|t| t.formula.as_ref() != Some(&t.image)).collect();
    Ok(Report::new(
        "Orbit.param",
        q,
        bad.is_empty(),
        json!({"mismatches": 0}),
        json!({"tuples": tuples.len(), "mismatches": bad.len()}),
    )
    .with_witness(|| json!({"kind": "image_formula", "q": q, "tuple": tuple_json(&s, bad[0])})))
}

/// First and third coordinates of every image of an internal O_{h,i} are
/// nonzero.
pub fn nozero(q: u32) -> Result<Report> {
    if let Some(r) = hypotheses("Nozero", q)? {
        return Ok(r);
    }
    let s = OddSetting::new(q)?;
    let tuples = images(&s)?;
    let plane = s.plane();
    let internal: Vec<&Tuple> = tuples.iter().filter(|t| s.o_h(t.h, t.i).iter().all(|&p| s.is_internal(p))).collect();
    let bad: Vec<&&Tuple> = internal
        .iter()
        .filter(|t| t.image.iter().any(|&p| plane.point(p)[0].is_zero() || plane.point(p)[2].is_zero()))
        .collect();
    Ok(Report::new(
        "Nozero",
        q,
        bad.is_empty(),
        json!({"zero_coordinates": 0}),
        json!({"internal_tuples": internal.len(), "zero_coordinates": bad.len()}),
    )
    .with_witness(|| json!({"kind": "zero_coordinate", "q": q, "tuple": tuple_json(&s, bad[0])})))
}
