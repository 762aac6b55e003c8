use serde_json::json;

use crate::error::Result;
use crate::field::FieldCtx;
use crate::plane::{LineClass, PlaneCtx};

use super::report::Report;

/// Point and line censuses of the conic (odd q) or the regular hyperoval
/// (even q).
pub fn census(q: u32) -> Result<Report> {
    let plane = PlaneCtx::from_order(q)?;
    let conic = plane.conic();
    let qs = q as usize;
    if plane.field().is_odd() {
        let classes = plane.classify_points(&conic)?;
        let expected = json!({
            "internal": qs * (qs - 1) / 2,
            "on_conic": qs + 1,
            "external": qs * (qs + 1) / 2,
        });
        let observed = json!({
            "internal": classes.internal.len(),
            "on_conic": classes.on_conic.len(),
            "external": classes.external.len(),
        });
        return Ok(Report::new("Census", q, expected == observed, expected, observed));
    }
    let hyperoval = plane.hyperoval(&conic)?;
    let mut per_point = std::collections::BTreeMap::<(usize, usize), usize>::new();
    let mut first_bad = None;
    for p in 0..plane.num_points() as u32 {
        if hyperoval.points.binary_search(&p).is_ok() {
            continue;
        }
        let mut secant = 0;
        let mut external = 0;
        for &l in plane.lines_through(p) {
            match plane.classify_line(l, &hyperoval.points)? {
                LineClass::Secant => secant += 1,
                LineClass::External => external += 1,
                LineClass::Tangent => {}
            }
        }
        if (secant, external) != (qs / 2 + 1, qs / 2) && first_bad.is_none() {
            first_bad = Some((p, secant, external));
        }
        *per_point.entry((secant, external)).or_default() += 1;
    }
    let expected = json!({
        "external_lines": qs * (qs - 1) / 2,
        "points_off_hyperoval": qs * qs - 1,
        "secant_external_through_each": [qs / 2 + 1, qs / 2],
    });
    let patterns: Vec<_> =
        per_point.iter().map(|(&(s, e), &n)| json!({"secant": s, "external": e, "points": n})).collect();
    let observed = json!({
        "external_lines": hyperoval.external_lines.len(),
        "points_off_hyperoval": per_point.values().sum::<usize>(),
        "patterns": patterns,
    });
    let ok = hyperoval.external_lines.len() == qs * (qs - 1) / 2
        && per_point.len() == 1
        && per_point.get(&(qs / 2 + 1, qs / 2)) == Some(&(qs * qs - 1));
    Ok(Report::new("Census", q, ok, expected, observed).with_witness(|| {
        let (p, s, e) = first_bad.unwrap_or((u32::MAX, 0, 0));
        json!({"kind": "point_pencil", "q": q, "point": p, "secant": s, "external": e})
    }))
}

/// The shifted square-class counts against the closed forms.
pub fn elle(q: u32) -> Result<Report> {
    let k = FieldCtx::of_order(q)?;
    if !k.is_odd() {
        return Ok(Report::skipped("Elle", q, "q even: square classes undefined"));
    }
    let (shift, formulas) = if q % 4 == 3 {
        (1, [(1, (q as usize - 3) / 4), (-1, (q as usize + 1) / 4)])
    } else {
        (-1, [(-1, (q as usize - 1) / 4), (1, (q as usize - 1) / 4)])
    };
    let mut expected = serde_json::Map::new();
    let mut observed = serde_json::Map::new();
    let mut ok = true;
    for (target, want) in formulas {
        let got = k.shifted_class_count(shift, target)?;
        let key = format!("(1+Q{shift:+})∩Q{target:+}");
        ok &= got == want;
        expected.insert(key.clone(), json!(want));
        observed.insert(key, json!(got));
    }
    let (expected, observed) = (serde_json::Value::Object(expected), serde_json::Value::Object(observed));
    Ok(Report::new("Elle", q, ok, expected, observed.clone())
        .with_witness(|| json!({"kind": "class_count", "q": q, "counts": observed})))
}
