use serde_json::json;

use crate::error::Result;
use crate::field::{Fe, FieldCtx};

use super::report::Report;

/// Whether w = ω^t satisfies the condition on t0: the value
/// w²(h-1) + w(2h+2) + h - 1 is a non-square and, when h is a square, w avoids
/// ±(r-1)/(r+1) and ±(r+1)/(r-1) for r² = h.
pub fn t0_condition(k: &FieldCtx, h: Fe, w: Fe) -> bool {
    let two = k.from_u32(2);
    let hm1 = k.sub(h, Fe::ONE);
    if let Some(r) = k.sqrt(h).filter(|_| k.chi(h) == 1) {
        let a = k.div(k.sub(r, Fe::ONE), k.add(r, Fe::ONE));
        let b = k.div(k.add(r, Fe::ONE), k.sub(r, Fe::ONE));
        if [a, k.neg(a), b, k.neg(b)].contains(&w) {
            return false;
        }
    }
    let val = k.add(k.add(k.mul(k.mul(w, w), hm1), k.mul(w, k.add(k.mul(two, h), two))), hm1);
    k.chi(val) == -1
}

/// For each h ∈ 1 + Q+, the number of t ∈ {1, …, q-2} with ω^t satisfying
/// the condition on t0.
pub fn conicsol_counts(k: &FieldCtx) -> Vec<(Fe, usize)> {
    let q = k.q();
    let mut out: Vec<(Fe, usize)> = k
        .nonzero()
        .filter(|&s| k.chi(s) == 1)
        .map(|s| {
            let h = k.add(Fe::ONE, s);
            (h, (1..=q as i64 - 2).filter(|&t| t0_condition(k, h, k.exp(t))).count())
        })
        .collect();
    out.sort_by_key(|&(h, _)| k.to_int(h));
    out
}

pub fn conicsol(q: u32) -> Result<Report> {
    let k = FieldCtx::of_order(q)?;
    if !k.is_odd() || q % 4 != 3 {
        return Ok(Report::skipped("Conicsol", q, "q is not 3 mod 4"));
    }
    let bound = (q as usize - 1) / 2;
    let counts = conicsol_counts(&k);
    let low: Vec<_> = counts.iter().filter(|&&(_, c)| c < bound).collect();
    let nonsquare_branch: Vec<usize> = counts.iter().filter(|&&(h, _)| k.chi(h) == -1).map(|&(_, c)| c).collect();
    let square_branch: Vec<usize> = counts.iter().filter(|&&(h, _)| k.chi(h) == 1).map(|&(_, c)| c).collect();
    let exact = nonsquare_branch.iter().all(|&c| c == bound);
    let table: Vec<_> = counts.iter().map(|&(h, c)| json!([k.to_int(h), c])).collect();
    let ok = low.is_empty() && exact;
    Ok(Report::new(
        "Conicsol",
        q,
        ok,
        json!({"min_count": bound, "nonsquare_h_count": bound}),
        json!({
            "min_count": counts.iter().map(|&(_, c)| c).min(),
            "nonsquare_h_counts": nonsquare_branch,
            "square_h_counts": square_branch,
            "counts": table,
        }),
    )
    .with_witness(|| {
        let (h, c) = low.first().map(|&&(h, c)| (h, c)).unwrap_or_else(|| {
            *counts.iter().find(|&&(h, c)| k.chi(h) == -1 && c != bound).expect("some count is off")
        });
        json!({"kind": "conicsol_count", "q": q, "h": k.to_int(h), "count": c})
    }))
}
