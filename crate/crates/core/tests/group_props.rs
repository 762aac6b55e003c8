use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use fgdt_core::field::FieldCtx;
use fgdt_core::group::action::on_points;
use fgdt_core::group::cache::{load_or_generate, read_group, write_group};
use fgdt_core::group::cosets::right_cosets;
use fgdt_core::group::named::{pgl2_group, psl2_by_enumeration, psl2_generators, psl2_group, psl2_order};
use fgdt_core::group::perm::CAYLEY_CAP;
use fgdt_core::group::subgroups::{is_abelian, is_dihedral, subgroup_classes, DEFAULT_SUBGROUP_CAP};
use fgdt_core::group::sylow::sylow2_even;
use fgdt_core::group::{Mat3, Perm};
use fgdt_core::plane::PlaneCtx;
use proptest::prelude::*;

fn field(q: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::of_order(q).unwrap())
}

#[test]
fn generated_psl_equals_the_enumerated_determinant_class() {
    for q in [3u32, 4, 5, 7, 8, 9, 11] {
        let k = field(q);
        let t = psl2_group(k.clone()).unwrap();
        let mut gen: Vec<Mat3> = t.elements().to_vec();
        gen.sort_unstable();
        assert_eq!(gen, psl2_by_enumeration(&k), "q={q}");
        let n = q as usize;
        let expected = if q % 2 == 1 { n * (n * n - 1) / 2 } else { n * (n * n - 1) };
        assert_eq!(t.order(), expected);
        assert_eq!(psl2_order(q), expected);
        assert_eq!(pgl2_group(k).unwrap().order(), n * (n * n - 1));
    }
}

#[test]
fn every_element_preserves_the_conic() {
    for q in [5u32, 8, 9] {
        let plane = PlaneCtx::from_order(q).unwrap();
        let conic = plane.conic().points().to_vec();
        let x = pgl2_group(plane.field_arc().clone()).unwrap();
        assert!(x.preserves(&plane, &conic));
        assert_eq!(x.set_stabilizer(&plane, &conic).len(), x.order());
    }
}

#[test]
fn psl_2_7_element_orders() {
    let t = psl2_group(field(7)).unwrap();
    let k = t.field();
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    for g in t.elements() {
        *hist.entry(g.order(k)).or_default() += 1;
    }
    assert_eq!(hist, BTreeMap::from([(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)]));
}

#[test]
fn psl_2_5_subgroup_lattice_matches_a5() {
    let plane = PlaneCtx::from_order(5).unwrap();
    let conic = plane.conic().points().to_vec();
    let g = on_points(&plane, &psl2_generators(plane.field()), &conic).unwrap();
    let fin = g.enumerate(CAYLEY_CAP).unwrap();
    assert_eq!(fin.order(), 60);
    let classes = subgroup_classes(&fin, None, DEFAULT_SUBGROUP_CAP).unwrap();
    let orders: Vec<usize> = classes.iter().map(|c| c.order()).collect();
    assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
    let total: usize = classes.iter().map(|c| c.class_size).sum();
    assert_eq!(total, 59);
    for c in &classes {
        assert_eq!(fin.closure(&c.generators), c.rep);
        assert_eq!(60 % c.order(), 0);
    }
    let six = classes.iter().find(|c| c.order() == 6).unwrap();
    let ten = classes.iter().find(|c| c.order() == 10).unwrap();
    let four = classes.iter().find(|c| c.order() == 4).unwrap();
    assert!(is_dihedral(&fin, &six.rep) && is_dihedral(&fin, &ten.rep));
    assert!(is_abelian(&fin, &four.rep));
}

#[test]
fn right_cosets_partition_the_group() {
    let plane = PlaneCtx::from_order(7).unwrap();
    let conic = plane.conic().points().to_vec();
    let fin = on_points(&plane, &psl2_generators(plane.field()), &conic).unwrap().enumerate(CAYLEY_CAP).unwrap();
    let h = fin.stabilizer_of_point(0);
    let cosets = right_cosets(&fin, &h);
    assert_eq!(cosets.len() * h.len(), fin.order());
    let all: BTreeSet<u32> = cosets.iter().flatten().copied().collect();
    assert_eq!(all.len(), fin.order());
    for c in &cosets {
        let x = c[0];
        let expect: BTreeSet<u32> = h.iter().map(|&a| fin.mul(a, x)).collect();
        assert_eq!(c.iter().copied().collect::<BTreeSet<_>>(), expect);
    }
}

#[test]
fn sylow_two_subgroup_is_elementary_abelian_of_order_q() {
    for q in [4u32, 8, 16] {
        let plane = PlaneCtx::from_order(q).unwrap();
        let t = psl2_group(plane.field_arc().clone()).unwrap();
        let k = plane.field();
        let syl = sylow2_even(&plane, &t).unwrap();
        assert_eq!(syl.s.len(), q as usize);
        for a in &syl.s {
            assert!(a.mul(k, a).is_identity());
            for b in &syl.s {
                assert_eq!(a.mul(k, b), b.mul(k, a));
                assert!(syl.s.contains(&a.mul(k, b)));
            }
        }
        assert_eq!(syl.k_generator.order(k), q as u64 - 1);
    }
}

#[test]
fn cache_text_round_trips_and_is_reused() {
    let k = field(7);
    let t = psl2_group(k.clone()).unwrap();
    let back = read_group(k.clone(), &write_group(&t)).unwrap();
    assert_eq!(back.elements(), t.elements());
    assert!(read_group(k.clone(), "garbage").is_err());

    let dir = std::env::temp_dir().join(format!("fgdt-cache-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gens = psl2_generators(&k);
    let first = load_or_generate(Some(&dir), k.clone(), &gens).unwrap();
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let second = load_or_generate(Some(&dir), k, &gens).unwrap();
    assert_eq!(first.elements(), second.elements());
    std::fs::remove_dir_all(&dir).unwrap();
}

fn random_mat(k: &FieldCtx, e: [u32; 9]) -> Option<Mat3> {
    let m = Mat3(e.map(|x| k.from_int(x % k.q())));
    m.is_invertible(k).then(|| m.canonical(k).unwrap())
}

proptest! {
    #[test]
    fn matrices_act_on_the_right(e1 in prop::array::uniform9(0u32..9), e2 in prop::array::uniform9(0u32..9), p in 0u32..91) {
        let plane = PlaneCtx::from_order(9).unwrap();
        let k = plane.field();
        let (Some(a), Some(b)) = (random_mat(k, e1), random_mat(k, e2)) else { return Ok(()); };
        let ab = a.mul(k, &b);
        prop_assert_eq!(ab.apply_point(&plane, p), b.apply_point(&plane, a.apply_point(&plane, p)));
        prop_assert_eq!(ab.point_perm(&plane), a.point_perm(&plane).then(&b.point_perm(&plane)));
        prop_assert!(a.mul(k, &a.inverse(k)).is_identity());
        let l = plane.lines_through(p)[0];
        prop_assert!(plane.incident(a.apply_point(&plane, p), a.apply_line(&plane, l)));
        prop_assert_eq!(a.pow(k, a.order(k)), Mat3::identity());
    }

    #[test]
    fn perm_composition_and_inverse(v in prop::collection::vec(0u32..1000, 1..30), w in prop::collection::vec(0u32..1000, 30)) {
        let n = v.len();
        let sort = |keys: &[u32]| {
            let mut idx: Vec<u32> = (0..n as u32).collect();
            idx.sort_by_key(|&i| (keys[i as usize], i));
            Perm::from_vec(idx)
        };
        let (a, b) = (sort(&v), sort(&w[..n]));
        let ab = a.then(&b);
        for x in 0..n as u32 {
            prop_assert_eq!(ab.apply(x), b.apply(a.apply(x)));
        }
        prop_assert!(a.then(&a.inverse()).is_identity());
        let mut x = a.clone();
        for _ in 1..a.order() {
            x = x.then(&a);
        }
        prop_assert!(x.is_identity());
    }
}
