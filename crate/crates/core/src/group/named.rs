//! The conic-preserving copy of PGL(2,q) inside PGL(3,q) and its named elements.

use std::sync::Arc;

use crate::error::{precondition, Result};
use crate::field::{Fe, FieldCtx};

use super::cache::{cache_dir, load_or_generate};
use super::matrix::{Mat3, MatrixGroup};

/// Image of the 2x2 matrix (a b; c d) in PGL(3,q), without any check.
pub fn sym2(k: &FieldCtx, a: Fe, b: Fe, c: Fe, d: Fe) -> Mat3 {
    let two = k.from_u32(2);
    let m = Mat3::from_rows([
        [k.mul(a, a), k.mul(a, b), k.mul(b, b)],
        [k.mul(two, k.mul(a, c)), k.add(k.mul(a, d), k.mul(b, c)), k.mul(two, k.mul(b, d))],
        [k.mul(c, c), k.mul(c, d), k.mul(d, d)],
    ]);
    m.canonical(k).unwrap_or(m)
}

fn det2(k: &FieldCtx, a: Fe, b: Fe, c: Fe, d: Fe) -> Fe {
    k.sub(k.mul(a, d), k.mul(b, c))
}

/// An element of T = PSL(2,q): requires ad - bc to be a nonzero square.
pub fn psl2_embed(k: &FieldCtx, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Mat3> {
    let det = det2(k, a, b, c, d);
    match k.chi(det) {
        0 => precondition("ad - bc = 0"),
        -1 => precondition(format!(
            "ad - bc = {} is a non-square: the element lies in PGL(2,q) outside PSL(2,q)",
            k.display(det)
        )),
        _ => Ok(sym2(k, a, b, c, d)),
    }
}

/// An element of X = PGL(2,q).
pub fn pgl2_embed(k: &FieldCtx, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Mat3> {
    if det2(k, a, b, c, d).is_zero() {
        return precondition("ad - bc = 0");
    }
    Ok(sym2(k, a, b, c, d))
}

/// diag(w, 1, w^-1).
pub fn alpha(k: &FieldCtx) -> Mat3 {
    let w = k.omega();
    Mat3::from_rows([[w, Fe::ZERO, Fe::ZERO], [Fe::ZERO, Fe::ONE, Fe::ZERO], [Fe::ZERO, Fe::ZERO, k.inv(w)]])
        .canonical(k)
        .unwrap()
}

pub fn beta(k: &FieldCtx) -> Mat3 {
    let m1 = k.neg(Fe::ONE);
    Mat3::from_rows([[Fe::ZERO, Fe::ZERO, Fe::ONE], [Fe::ZERO, m1, Fe::ZERO], [Fe::ONE, Fe::ZERO, Fe::ZERO]])
}

/// True when tau(xi) is defined: xi nonzero, and xi^2 != -1 for q = 1 mod 4.
pub fn tau_admissible(k: &FieldCtx, xi: Fe) -> bool {
    if xi.is_zero() {
        return false;
    }
    !(k.q() % 4 == 1 && k.mul(xi, xi) == k.neg(Fe::ONE))
}

pub fn tau(k: &FieldCtx, xi: Fe) -> Result<Mat3> {
    if !tau_admissible(k, xi) {
        return precondition(format!("tau needs xi != 0 and xi^2 != -1 when q = 1 mod 4 (xi = {})", k.display(xi)));
    }
    Ok(sym2(k, Fe::ONE, xi, xi, k.neg(Fe::ONE)))
}

/// The determinant class deciding whether tau(xi) lies in T.
pub fn tau_in_psl(k: &FieldCtx, xi: Fe) -> bool {
    k.chi(k.neg(k.add(Fe::ONE, k.mul(xi, xi)))) == 1
}

pub fn gamma(k: &FieldCtx, c: Fe) -> Mat3 {
    sym2(k, Fe::ONE, c, Fe::ZERO, Fe::ONE)
}

/// Generators of T = PSL(2,q) in its conic-preserving embedding.
pub fn psl2_generators(k: &FieldCtx) -> Vec<Mat3> {
    let a = alpha(k);
    let a2 = if k.is_odd() { a.mul(k, &a) } else { a };
    vec![a2, beta(k), gamma(k, Fe::ONE)]
}

/// Generators of X = PGL(2,q).
pub fn pgl2_generators(k: &FieldCtx) -> Vec<Mat3> {
    vec![alpha(k), beta(k), gamma(k, Fe::ONE)]
}

pub fn psl2_order(q: u32) -> usize {
    let q = q as usize;
    let full = q * (q * q - 1);
    if q % 2 == 1 {
        full / 2
    } else {
        full
    }
}

pub fn psl2_group(field: Arc<FieldCtx>) -> Result<MatrixGroup> {
    let gens = psl2_generators(&field);
    load_or_generate(cache_dir().as_deref(), field, &gens)
}

pub fn pgl2_group(field: Arc<FieldCtx>) -> Result<MatrixGroup> {
    let gens = pgl2_generators(&field);
    load_or_generate(cache_dir().as_deref(), field, &gens)
}

/// Every admissible image (a,b,c,d) with square determinant, deduplicated.
pub fn psl2_by_enumeration(k: &FieldCtx) -> Vec<Mat3> {
    let mut out = Vec::new();
    for a in k.elements() {
        for b in k.elements() {
            for c in k.elements() {
                for d in k.elements() {
                    if let Ok(m) = psl2_embed(k, a, b, c, d) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::PlaneCtx;

    #[test]
    fn identity_and_alpha_squared() {
        let k = FieldCtx::of_order(7).unwrap();
        assert!(psl2_embed(&k, Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE).unwrap().is_identity());
        let w = k.omega();
        let a = alpha(&k);
        assert_eq!(psl2_embed(&k, w, Fe::ZERO, Fe::ZERO, k.inv(w)).unwrap(), a.mul(&k, &a));
        assert!(psl2_embed(&k, w, Fe::ZERO, Fe::ZERO, Fe::ONE).is_err());
        assert!(psl2_embed(&k, Fe::ONE, Fe::ONE, Fe::ONE, Fe::ONE).is_err());
    }

    #[test]
    fn enumeration_count_q7() {
        let k = FieldCtx::of_order(7).unwrap();
        assert_eq!(psl2_by_enumeration(&k).len(), 168);
    }

    #[test]
    fn named_relations() {
        let k = FieldCtx::of_order(7).unwrap();
        let b = beta(&k);
        assert!(b.mul(&k, &b).is_identity());
        let f = |n| k.from_int(n);
        assert_eq!(gamma(&k, f(1)).mul(&k, &gamma(&k, f(2))), gamma(&k, f(3)));
        for xi in k.nonzero() {
            assert_eq!(tau(&k, xi).unwrap().order(&k), 2);
        }
        let k9 = FieldCtx::of_order(9).unwrap();
        assert_eq!(alpha(&k9).order(&k9), 8);
        let k13 = FieldCtx::of_order(13).unwrap();
        let i = k13.sqrt(k13.neg(Fe::ONE)).unwrap();
        assert!(tau(&k13, i).is_err());
        assert!(tau(&k13, Fe::ZERO).is_err());
    }

    #[test]
    fn group_orders_and_conic_invariance() {
        for q in [4u32, 5, 7, 8, 9] {
            let pl = PlaneCtx::from_order(q).unwrap();
            let t = psl2_group(pl.field_arc().clone()).unwrap();
            assert_eq!(t.order(), psl2_order(q), "q={q}");
            assert!(t.preserves(&pl, pl.conic().points()));
            let x = pgl2_group(pl.field_arc().clone()).unwrap();
            assert_eq!(x.order(), (q * (q * q - 1)) as usize);
        }
        let k8 = Arc::new(FieldCtx::of_order(8).unwrap());
        assert_eq!(psl2_group(k8).unwrap().order(), 504);
    }

    #[test]
    fn tau_membership_matches_determinant_class() {
        for q in [7u32, 9, 11, 13] {
            let k = Arc::new(FieldCtx::of_order(q).unwrap());
            let t = psl2_group(k.clone()).unwrap();
            for xi in k.nonzero() {
                if let Ok(m) = tau(&k, xi) {
                    assert_eq!(t.contains(&m), tau_in_psl(&k, xi), "q={q} xi={}", k.display(xi));
                }
            }
        }
    }
}
