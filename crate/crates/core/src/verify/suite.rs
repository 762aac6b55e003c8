use rayon::prelude::*;

use crate::error::Result;
use crate::field::prime_power;

use super::report::{sort_reports, timed, Report};
use super::{census, conicsol, frob, lsr1, nonexist, orbit, syl};

pub const OUTSIDE_DESK: &str = "outside the desk-scale list";

type Run = fn(u32) -> Result<Vec<Report>>;

/// Claims computed together, with the q values they are run at and the
/// hypothesis each one places on q.
pub struct Family {
    pub ids: &'static [&'static str],
    pub desk: fn(u32) -> bool,
    pub hypothesis: fn(&str, u32) -> Option<String>,
    run: Run,
}

fn one(r: Result<Report>) -> Result<Vec<Report>> {
    r.map(|r| vec![r])
}

fn odd(q: u32) -> bool {
    q % 2 == 1
}

fn none(_: &str, _: u32) -> Option<String> {
    None
}

fn type2(_: &str, q: u32) -> Option<String> {
    if !odd(q) {
        Some("q even: type II needs q odd".into())
    } else if q <= 5 {
        Some("q <= 5 is excluded by the type II hypothesis q > 5".into())
    } else {
        None
    }
}

fn type2_internal(id: &str, q: u32) -> Option<String> {
    if !odd(q) {
        return Some("q even: no internal points".into());
    }
    type2(id, q)
}

fn type2_lsr(id: &str, q: u32) -> Option<String> {
    if !odd(q) {
        return Some("q even".into());
    }
    type2(id, q).or_else(|| (id == "LSR1.4" && q % 4 == 3).then(|| "q = 3 mod 4: the item concerns q = 1 mod 4".into()))
}

fn main_family(id: &str, q: u32) -> Option<String> {
    type2(id, q).or_else(|| match id {
        "Main.mod4" if q % 4 != 3 => Some("q is not 3 mod 4".into()),
        "Main.closure" if q % 4 != 1 => Some("q is not 1 mod 4".into()),
        _ => None,
    })
}

fn syl_hypothesis(_: &str, q: u32) -> Option<String> {
    if q % 4 != 1 {
        return Some("q is not 1 mod 4".into());
    }
    if q <= 5 {
        return Some("q <= 5 is excluded by the type II hypothesis q > 5".into());
    }
    let (_, f) = prime_power(q)?;
    (f % 2 == 1).then(|| format!("f = {f} odd: no h with h^(p^m) != h and h^(p^2m) = h"))
}

pub static FAMILIES: [Family; 13] = [
    Family {
        ids: &["Census"],
        desk: |q| [4, 5, 7, 8, 9, 11, 13, 16].contains(&q),
        hypothesis: none,
        run: |q| one(census::census(q)),
    },
    Family {
        ids: &["Elle"],
        desk: |q| odd(q) && (5..=121).contains(&q),
        hypothesis: |_, q| (!odd(q)).then(|| "q even: square classes undefined".into()),
        run: |q| one(census::elle(q)),
    },
    Family {
        ids: &frob::ITEMS,
        desk: |q| [4, 8, 16, 32].contains(&q),
        hypothesis: |_, q| odd(q).then(|| "q odd: the Sylow 2-subgroup is not elementary abelian of order q".into()),
        run: frob::frob,
    },
    Family {
        ids: &["Orbit"],
        desk: |q| [7, 9, 11, 13].contains(&q),
        hypothesis: type2_internal,
        run: |q| one(orbit::orbit(q)),
    },
    Family {
        ids: &["Orbit.param"],
        desk: |q| [9, 13].contains(&q),
        hypothesis: type2_internal,
        run: |q| one(orbit::orbit_param(q)),
    },
    Family {
        ids: &["Nozero"],
        desk: |q| [9, 13].contains(&q),
        hypothesis: type2_internal,
        run: |q| one(orbit::nozero(q)),
    },
    Family { ids: &lsr1::ITEMS, desk: |q| [7, 9, 13].contains(&q), hypothesis: type2_lsr, run: lsr1::lsr1 },
    Family { ids: &["BF"], desk: |q| [7, 9, 11, 13].contains(&q), hypothesis: type2_lsr, run: |q| one(lsr1::bf(q)) },
    Family {
        ids: &["Conicsol"],
        desk: |q| [7, 11, 19, 23].contains(&q),
        hypothesis: |_, q| (q % 4 != 3).then(|| "q is not 3 mod 4".into()),
        run: |q| one(conicsol::conicsol(q)),
    },
    Family { ids: &["Syl"], desk: |q| [9, 13].contains(&q), hypothesis: syl_hypothesis, run: |q| one(syl::syl(q)) },
    Family {
        ids: &["Soon"],
        desk: |q| [16, 32].contains(&q),
        hypothesis: |_, q| {
            if odd(q) {
                Some("q odd: type I needs q even".into())
            } else if q <= 8 {
                Some("q <= 8 is excluded by the type I hypothesis q > 8".into())
            } else {
                None
            }
        },
        run: |q| one(nonexist::soon(q)),
    },
    Family {
        ids: &["Main"],
        desk: |q| [7, 9, 11, 13].contains(&q),
        hypothesis: main_family,
        run: |q| one(nonexist::main_type2(q)),
    },
    Family {
        ids: &["Main.closure", "Main.mod4"],
        desk: |q| [7, 9, 11, 13].contains(&q),
        hypothesis: main_family,
        run: |q| Ok(vec![nonexist::main_closure(q)?, nonexist::main_mod4(q)?]),
    },
];

pub fn claim_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = FAMILIES.iter().flat_map(|f| f.ids.iter().copied()).collect();
    ids.sort_unstable();
    ids
}

/// A filter selects a claim by its exact id or by a prefix ending at a dot,
/// so "LSR1" selects every LSR1 item and "Main" selects Main and its parts.
pub fn matches(id: &str, filter: Option<&str>) -> bool {
    match filter {
        None => true,
        Some(f) => id == f || id.strip_prefix(f).is_some_and(|rest| rest.starts_with('.')),
    }
}

/// Every selected claim at every prime power in `qs`. Claims outside their
/// hypotheses or their desk-scale list are reported as skipped.
pub fn verify_all(qs: &[u32], filter: Option<&str>) -> Result<Vec<Report>> {
    let mut jobs = Vec::new();
    for fam in &FAMILIES {
        let ids: Vec<&str> = fam.ids.iter().copied().filter(|id| matches(id, filter)).collect();
        if ids.is_empty() {
            continue;
        }
        for &q in qs.iter().filter(|&&q| prime_power(q).is_some()) {
            jobs.push((fam, q, ids.clone()));
        }
    }
    let batches: Vec<Vec<Report>> =
        jobs.par_iter().map(|(fam, q, ids)| run_family(fam, *q, ids)).collect::<Result<_>>()?;
    let mut out: Vec<Report> = batches.into_iter().flatten().collect();
    sort_reports(&mut out);
    Ok(out)
}

fn run_family(fam: &Family, q: u32, ids: &[&str]) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let mut pending = Vec::new();
    for &id in ids {
        if let Some(why) = (fam.hypothesis)(id, q) {
            out.push(Report::skipped(id, q, why));
        } else if !(fam.desk)(q) {
            out.push(Report::skipped(id, q, OUTSIDE_DESK));
        } else {
            pending.push(id);
        }
    }
    if !pending.is_empty() {
        let mut err = None;
        let ran = timed(|| match (fam.run)(q) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                Vec::new()
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        out.extend(ran.into_iter().filter(|r| pending.contains(&r.claim.as_str())));
    }
    Ok(out)
}

/// Reruns one claim at one q, ignoring the desk-scale list.
pub fn rerun(id: &str, q: u32) -> Result<Option<Report>> {
    let Some(fam) = FAMILIES.iter().find(|f| f.ids.contains(&id)) else {
        return Ok(None);
    };
    if let Some(why) = (fam.hypothesis)(id, q) {
        return Ok(Some(Report::skipped(id, q, why)));
    }
    Ok((fam.run)(q)?.into_iter().find(|r| r.claim == id))
}
