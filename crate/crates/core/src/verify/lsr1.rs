use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::Result;
use crate::field::{Fe, FieldCtx};
use crate::group::cosets::{coset_cover, coset_reps, CosetKeys};
use crate::group::named::{gamma, pgl2_group, tau, tau_admissible};
use crate::group::Mat3;

use super::report::Report;
use super::typeii::OddSetting;

pub const ITEMS: [&str; 4] = ["LSR1.1", "LSR1.2", "LSR1.3", "LSR1.4"];

fn admissible_xis(k: &FieldCtx) -> Vec<Fe> {
    k.nonzero().filter(|&x| tau_admissible(k, x)).collect()
}

/// The coset items, each tested over every admissible parameter tuple by
/// comparing canonical coset labels.
pub fn lsr1(q: u32) -> Result<Vec<Report>> {
    let k = FieldCtx::of_order(q)?;
    if !k.is_odd() || q <= 5 {
        let why = if k.is_odd() { "q <= 5 is excluded by the type II hypothesis q > 5" } else { "q even" };
        return Ok(ITEMS.iter().map(|c| Report::skipped(c, q, why)).collect());
    }
    let s = OddSetting::new(q)?;
    let k = s.plane().field();
    let half = (q - 1) / 2;
    let xis = admissible_xis(k);
    let int = |x: Fe| k.to_int(x);
    let mut out = Vec::new();

    let w_keys: Vec<Mat3> = k.elements().map(|c| s.coset_key(&gamma(k, c))).collect();
    let mut first: HashMap<Mat3, Fe> = HashMap::new();
    let mut bad1 = Vec::new();
    for (c, key) in k.elements().zip(&w_keys) {
        if let Some(&c0) = first.get(key) {
            bad1.push(json!([int(c0), int(c)]));
        } else {
            first.insert(*key, c);
        }
    }
    out.push(
        Report::new(
            "LSR1.1",
            q,
            bad1.is_empty(),
            json!({"counterexamples": 0}),
            json!({"pairs": q * (q - 1) / 2, "counterexamples": bad1.len()}),
        )
        .with_witness(|| json!({"kind": "coset_collision", "q": q, "items": "gamma_c1, gamma_c2", "c": bad1[0]})),
    );

    let mut psi_keys: Vec<(Fe, Fe, u32, Mat3)> = Vec::new();
    for &xi in &xis {
        for c in k.elements() {
            for u in 1..=half {
                psi_keys.push((xi, c, u, s.coset_key(&s.psi(xi, c, u)?)));
            }
        }
    }
    let bad2: Vec<Value> = psi_keys
        .iter()
        .filter_map(|(xi, c, u, key)| {
            first.get(key).map(|&c1| json!({"c1": int(c1), "xi": int(*xi), "c2": int(*c), "u": u}))
        })
        .collect();
    out.push(
        Report::new(
            "LSR1.2",
            q,
            bad2.is_empty(),
            json!({"counterexamples": 0}),
            json!({"tuples": w_keys.len() * psi_keys.len(), "counterexamples": bad2.len()}),
        )
        .with_witness(|| json!({"kind": "coset_collision", "q": q, "tuple": bad2[0]})),
    );

    let quarter = if q % 4 == 1 { (q - 1) / 4 } else { 0 };
    let mut by_key: BTreeMap<(Fe, Mat3), Vec<(Fe, u32)>> = BTreeMap::new();
    for (xi, c, u, key) in &psi_keys {
        by_key.entry((*xi, *key)).or_default().push((*c, *u));
    }
    let partner = |xi: Fe, c: Fe, u: u32| {
        let c2 = k.sub(k.sub(k.inv(xi), xi), c);
        let u2 = (u - 1 + quarter) % half + 1;
        (c2, u2)
    };
    let mut collisions = 0usize;
    let mut bad3 = Vec::new();
    for ((xi, _), members) in &by_key {
        for (a, &(c1, u1)) in members.iter().enumerate() {
            for &(c2, u2) in &members[a + 1..] {
                collisions += 1;
                let fits = q % 4 == 1 && (partner(*xi, c1, u1) == (c2, u2) || partner(*xi, c2, u2) == (c1, u1));
                if !fits {
                    bad3.push(json!({"xi": int(*xi), "c1": int(c1), "u1": u1, "c2": int(c2), "u2": u2}));
                }
            }
        }
    }
    let predicted = if q % 4 == 1 { xis.len() * (q as usize) * (half as usize) / 2 } else { 0 };
    out.push(
        Report::new(
            "LSR1.3",
            q,
            bad3.is_empty() && collisions == predicted,
            json!({"counterexamples": 0, "collisions": predicted}),
            json!({"counterexamples": bad3.len(), "collisions": collisions}),
        )
        .with_witness(|| match bad3.first() {
            Some(b) => json!({"kind": "coset_collision", "q": q, "tuple": b}),
            None => json!({"kind": "collision_count", "q": q, "collisions": collisions}),
        }),
    );

    if q % 4 == 3 {
        out.push(Report::skipped("LSR1.4", q, "q = 3 mod 4: the item concerns q = 1 mod 4"));
        return Ok(out);
    }
    let mut xis_by_key: BTreeMap<Mat3, BTreeSet<Fe>> = BTreeMap::new();
    for (xi, _, _, key) in &psi_keys {
        xis_by_key.entry(*key).or_default().insert(*xi);
    }
    let mut cross = 0usize;
    let mut bad4 = Vec::new();
    for set in xis_by_key.values() {
        let v: Vec<Fe> = set.iter().copied().collect();
        for (a, &x1) in v.iter().enumerate() {
            for &x2 in &v[a + 1..] {
                cross += 1;
                if k.chi(k.mul(x1, x2)) != 1 {
                    bad4.push(json!([int(x1), int(x2)]));
                }
            }
        }
    }
    let (x1, x2) = (Fe::ONE, k.omega());
    let paper_pair = xis_by_key.values().filter(|set| set.contains(&x1) && set.contains(&x2)).count();
    out.push(
        Report::new(
            "LSR1.4",
            q,
            bad4.is_empty() && paper_pair == 0,
            json!({"counterexamples": 0, "collisions_for_1_and_omega": 0}),
            json!({"cross_xi_collisions": cross, "counterexamples": bad4.len(), "collisions_for_1_and_omega": paper_pair}),
        )
        .with_witness(|| json!({"kind": "cross_xi_collision", "q": q, "xi": bad4.first()})),
    );
    Ok(out)
}

struct Cover {
    outside_t: Vec<Mat3>,
    distinct: usize,
    distinct_in_t: usize,
    index: usize,
}

fn cover(s: &OddSetting, keys: &CosetKeys, xis: &[Fe]) -> Result<Cover> {
    let k = s.plane().field();
    let family = coset_reps(k, xis)?;
    let c = coset_cover(keys, &family)?;
    let outside_t: Vec<Mat3> = family.iter().copied().filter(|m| !s.t().contains(m)).collect();
    let in_t: Vec<Mat3> = family.iter().copied().filter(|m| s.t().contains(m)).collect();
    let distinct_in_t = coset_cover(keys, &in_t)?.distinct;
    Ok(Cover { outside_t, distinct: c.distinct, distinct_in_t, index: s.t().order() / s.tb.order() })
}

impl Cover {
    fn ok(&self) -> bool {
        self.outside_t.is_empty() && self.distinct_in_t == self.index
    }
}

/// The representative family with the parameters the argument fixes
/// (ξ = 1, or ξ1 = 1 and ξ2 = ω) must lie in T and meet every right coset of
/// T_B in T. When it does not, the least admissible choice that works is
/// reported alongside.
pub fn bf(q: u32) -> Result<Report> {
    let kf = FieldCtx::of_order(q)?;
    if !kf.is_odd() || q <= 5 {
        let why = if kf.is_odd() { "q <= 5 is excluded by the type II hypothesis q > 5" } else { "q even" };
        return Ok(Report::skipped("BF", q, why));
    }
    let s = OddSetting::new(q)?;
    let k = s.plane().field();
    let x = pgl2_group(Arc::new(kf))?;
    let keys = CosetKeys::new(&x, s.tb.elements())?;
    let int = |v: Fe| k.to_int(v);
    let paper: Vec<Fe> = if q % 4 == 3 { vec![Fe::ONE] } else { vec![Fe::ONE, k.omega()] };
    let got = cover(&s, &keys, &paper)?;
    let xis = admissible_xis(k);
    let in_t: Vec<u32> = xis.iter().filter(|&&xi| s.t().contains(&tau(k, xi).unwrap())).map(|&xi| int(xi)).collect();

    let mut rescue = None;
    if !got.ok() {
        let mut choices: Vec<Vec<Fe>> = Vec::new();
        if q % 4 == 3 {
            choices.extend(xis.iter().map(|&xi| vec![xi]));
        } else {
            for (a, &x1) in xis.iter().enumerate() {
                for &x2 in &xis[a + 1..] {
                    if k.chi(k.mul(x1, x2)) == -1 {
                        choices.push(vec![x1, x2]);
                    }
                }
            }
        }
        choices.sort_by_key(|c| c.iter().map(|&v| int(v)).collect::<Vec<_>>());
        for c in choices {
            if cover(&s, &keys, &c)?.ok() {
                rescue = Some(c.iter().map(|&v| int(v)).collect::<Vec<_>>());
                break;
            }
        }
    }
    let expected = json!({"outside_T": 0, "distinct_cosets_in_T": got.index});
    let observed = json!({
        "xi": paper.iter().map(|&v| int(v)).collect::<Vec<_>>(),
        "family_size": q as usize + paper.len() * (q as usize) * (q as usize - 1) / 2,
        "outside_T": got.outside_t.len(),
        "distinct_cosets": got.distinct,
        "distinct_cosets_in_T": got.distinct_in_t,
        "xi_with_tau_in_T": in_t,
        "rescue_xi": rescue,
    });
    Ok(Report::new("BF", q, got.ok(), expected, observed).with_witness(|| {
        let xi: Vec<u32> = paper.iter().map(|&v| int(v)).collect();
        match got.outside_t.first() {
            Some(m) => json!({"kind": "outside_psl", "q": q, "matrix": m.to_rows_int(k), "xi": xi}),
            None => json!({"kind": "coset_count", "q": q, "xi": xi, "distinct": got.distinct_in_t, "index": got.index}),
        }
    }))
}
