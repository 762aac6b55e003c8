use std::collections::BTreeSet;

use serde_json::json;

use crate::error::Result;
use crate::field::FieldCtx;
use crate::group::named::gamma;

use super::report::Report;
use super::typeii::OddSetting;

/// Unordered pairs of points of `line_set` lying together in some image of
/// `block` under γ_c, c ≠ 0.
fn pairs_covered(s: &OddSetting, block: &[u32], line_set: &[u32]) -> usize {
    let k = s.plane().field();
    let mut pairs = BTreeSet::new();
    for c in k.nonzero() {
        let img = s.image(&gamma(k, c), block);
        let on: Vec<u32> = img.iter().copied().filter(|p| line_set.binary_search(p).is_ok()).collect();
        for (a, &x) in on.iter().enumerate() {
            for &y in &on[a + 1..] {
                pairs.insert((x, y));
            }
        }
    }
    pairs.len()
}

pub fn syl(q: u32) -> Result<Report> {
    let k = FieldCtx::of_order(q)?;
    if !k.is_odd() || q % 4 != 1 {
        return Ok(Report::skipped("Syl", q, "q is not 1 mod 4"));
    }
    if q <= 5 {
        return Ok(Report::skipped("Syl", q, "q <= 5 is excluded by the type II hypothesis q > 5"));
    }
    let f = k.f();
    let s = OddSetting::new(q)?;
    let k = s.plane().field();
    let admissible = s.mixed_pairs();
    if admissible.is_empty() {
        return Ok(Report::skipped(
            "Syl",
            q,
            format!("f = {f} {}: no h with h^(p^m) != h and h^(p^2m) = h", if f % 2 == 1 { "odd" } else { "even" }),
        ));
    }
    let o_inf = s.o_inf(-1);
    let quarter = (q as usize - 1) / 4;
    let mut rows = Vec::new();
    let mut ok = true;
    for &(h, m) in &admissible {
        let hp = k.frobenius(h, m);
        for i in [1i8, -1] {
            for j in [1i8, -1] {
                let mut block = s.o_h(h, i);
                block.extend(s.o_h(hp, j));
                block.sort_unstable();
                let got = pairs_covered(&s, &block, &o_inf);
                let want = if i == j { quarter } else { 0 };
                ok &= got == want;
                rows.push(
                    json!({"shape": "mixed", "h": k.to_int(h), "m": m, "i": i, "j": j, "pairs": got, "expected": want}),
                );
            }
        }
    }
    for h in s.h_values(Some(-1), None) {
        let got = pairs_covered(&s, &s.c_star(h), &o_inf);
        ok &= got == 0;
        rows.push(json!({"shape": "conic", "h": k.to_int(h), "pairs": got, "expected": 0}));
    }
    let rows_for_witness = rows.clone();
    Ok(Report::new("Syl", q, ok, json!({"mixed_equal_signs": quarter, "otherwise": 0}), json!({"shapes": rows}))
        .with_witness(|| {
            let bad = rows_for_witness.iter().find(|r| r["pairs"] != r["expected"]).cloned();
            json!({"kind": "syl_count", "q": q, "shape": bad})
        }))
}
