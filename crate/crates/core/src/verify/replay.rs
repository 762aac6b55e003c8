//! Re-checking recorded reports. A failure whose witness has a direct check
//! is confirmed from the witness alone; every other report is confirmed by
//! running its claim again and comparing the status.

use serde_json::Value;

use crate::design::construct::{ExternalLines, InternalPoints};
use crate::design::incidence::{certify_design, IncidenceStructure};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::group::cosets::coset_reps;
use crate::group::named::psl2_by_enumeration;
use crate::group::{Mat3, PermGroup};

use super::conicsol::t0_condition;
use super::report::{Report, Status};
use super::suite::rerun;
use super::typeii::OddSetting;

fn bad(msg: &str) -> Error {
    Error::Parse(format!("witness: {msg}"))
}

fn uint(v: &Value, key: &str) -> Result<u32> {
    v[key].as_u64().map(|n| n as u32).ok_or_else(|| bad(&format!("missing integer {key}")))
}

fn elem(k: &FieldCtx, v: &Value) -> Result<Fe> {
    match v.as_u64() {
        Some(n) if n < k.q() as u64 => Ok(k.from_int(n as u32)),
        _ => Err(bad("field element out of range")),
    }
}

fn u32_list(v: &Value) -> Result<Vec<u32>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array"))?
        .iter()
        .map(|x| x.as_u64().map(|n| n as u32).ok_or_else(|| bad("expected integers")))
        .collect()
}

/// The matrix lies in the representative family for the recorded ξ and not
/// in PSL(2,q).
fn outside_psl(w: &Value) -> Result<bool> {
    let k = FieldCtx::of_order(uint(w, "q")?)?;
    let rows = w["matrix"].as_array().ok_or_else(|| bad("missing matrix"))?;
    let mut m = [[Fe::ZERO; 3]; 3];
    for (r, row) in rows.iter().enumerate().take(3) {
        for (c, x) in row.as_array().ok_or_else(|| bad("matrix row"))?.iter().enumerate().take(3) {
            m[r][c] = elem(&k, x)?;
        }
    }
    let m = Mat3::from_rows(m).canonical(&k).ok_or_else(|| bad("zero matrix"))?;
    let xis = u32_list(&w["xi"])?.into_iter().map(|x| elem(&k, &Value::from(x))).collect::<Result<Vec<_>>>()?;
    let in_family = coset_reps(&k, &xis)?.contains(&m);
    Ok(in_family && !psl2_by_enumeration(&k).contains(&m))
}

fn conicsol_count(w: &Value) -> Result<bool> {
    let q = uint(w, "q")?;
    let k = FieldCtx::of_order(q)?;
    let h = elem(&k, &w["h"])?;
    let count = (1..=q as i64 - 2).filter(|&t| t0_condition(&k, h, k.exp(t))).count();
    let bound = (q as usize - 1) / 2;
    Ok(count == uint(w, "count")? as usize && (count < bound || (k.chi(h) == -1 && count != bound)))
}

/// The pair A_t1, A_t2 lies in one to three blocks of the orbit of C_h*.
fn pair_coverage(w: &Value) -> Result<bool> {
    let s = OddSetting::new(uint(w, "q")?)?;
    let k = s.plane().field();
    let h = elem(k, &w["h"])?;
    let at = |t: u32| s.inner.position(s.point([k.exp(2 * t as i64), Fe::ZERO, Fe::ONE]));
    let (Some(a), Some(b)) = (at(uint(w, "t1")?), at(uint(w, "t2")?)) else {
        return Ok(false);
    };
    let base = s.positions(&s.c_star(h)).ok_or_else(|| bad("C_h* not internal"))?;
    let blocks = s.inner.action.set_orbit(&base, 1_000_000)?;
    let c = blocks.iter().filter(|blk| blk.contains(&a) && blk.contains(&b)).count();
    Ok(c as u32 == uint(w, "coverage")? && (1..4).contains(&c))
}

/// The recorded block orbits form a 2-design with λ = 2.
fn design(r: &Report, w: &Value) -> Result<bool> {
    let q = uint(w, "q")?;
    let group: PermGroup = match r.claim.as_str() {
        "Soon" => ExternalLines::new(q)?.action,
        "Main" => InternalPoints::new(q)?.action,
        _ => return Err(bad("design witness for an unexpected claim")),
    };
    let mut blocks = Vec::new();
    for key in w["orbit_keys"].as_array().ok_or_else(|| bad("missing orbit_keys"))? {
        blocks.extend(group.set_orbit(&u32_list(key)?, 1_000_000)?);
    }
    let s = IncidenceStructure::new(group.degree(), blocks)?;
    Ok(certify_design(&s, 2).is_ok())
}

/// Whether the report is reproduced.
pub fn replay(r: &Report) -> Result<bool> {
    if r.status == Status::Fail {
        if let Some(w) = &r.witness {
            match w["kind"].as_str() {
                Some("outside_psl") => return outside_psl(w),
                Some("conicsol_count") => return conicsol_count(w),
                Some("pair_coverage") => return pair_coverage(w),
                Some("design") => return design(r, w),
                _ => {}
            }
        }
    }
    match rerun(&r.claim, r.q)? {
        Some(again) => Ok(again.status == r.status && again.witness == r.witness),
        None => Err(Error::Parse(format!("unknown claim {}", r.claim))),
    }
}
