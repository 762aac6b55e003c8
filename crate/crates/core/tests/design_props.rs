mod common;

use std::collections::BTreeSet;

use fgdt_core::design::blockfile::{parse_blocks, write_blocks};
use fgdt_core::design::prescribed::{self, hyperplane, PointSet};
use fgdt_core::design::{
    certify_design, flag_transitive, orbit_design, search, BlockShape, CertFailure, DesignParams, IncidenceStructure,
    SearchCaps, SearchSpace,
};
use fgdt_core::group::action::on_points;
use fgdt_core::group::named::{psl2_generators, psl2_group};
use fgdt_core::group::perm::CAYLEY_CAP;
use fgdt_core::group::sylow::sylow2_even;
use fgdt_core::group::{Perm, PermGroup};
use fgdt_core::plane::PlaneCtx;
use proptest::prelude::*;

use common::{brute_designs, cycle, is_two_design};

fn fano() -> IncidenceStructure {
    let base = [0u32, 1, 3];
    let blocks = (0..7).map(|s| base.iter().map(|x| (x + s) % 7).collect()).collect();
    IncidenceStructure::new(7, blocks).unwrap()
}

#[test]
fn fano_plane_certifies_and_tampering_is_caught() {
    let s = fano();
    let c = certify_design(&s, 1).unwrap();
    assert_eq!(c.params, DesignParams { v: 7, b: 7, r: 3, k: 3, lambda: 1 });
    assert_eq!(c.repeated_blocks, 0);
    assert!(matches!(certify_design(&s, 2), Err(CertFailure::PairCoverage { count: 1, expected: 2, .. })));

    let mut blocks = s.blocks().to_vec();
    blocks[0] = vec![0, 1, 2];
    let bad = IncidenceStructure::new(7, blocks).unwrap();
    assert!(!is_two_design(bad.blocks(), 7, 1));
    assert!(certify_design(&bad, 1).is_err());
    assert!(matches!(certify_design(&IncidenceStructure::new(7, vec![]).unwrap(), 1), Err(CertFailure::NoBlocks)));
    assert!(IncidenceStructure::new(3, vec![vec![0, 5]]).is_err());
}

#[test]
fn derived_parameters_obey_the_counting_identities() {
    for v in 3..30usize {
        for k in 2..v {
            for lambda in 1..4 {
                if let Some(p) = DesignParams::derive(v, k, lambda) {
                    assert_eq!(p.r * (k - 1), lambda * (v - 1));
                    assert_eq!(p.b * k, v * p.r);
                    assert!(p.admissible());
                } else {
                    assert!((lambda * (v - 1)) % (k - 1) != 0 || (v * lambda * (v - 1) / (k - 1)) % k != 0);
                }
            }
        }
    }
    assert!(DesignParams::new(7, 7, 3, 3, 2).is_err());
}

#[test]
fn block_files_round_trip() {
    let s = fano();
    let text = write_blocks(&s, 1);
    assert!(text.starts_with("7 7 3 1\n"));
    let (back, lambda) = parse_blocks(&text).unwrap();
    assert_eq!(lambda, 1);
    assert_eq!(back.blocks(), s.blocks());
    assert!(parse_blocks("7 7 3\n").is_err());
    assert!(parse_blocks("3 1 2 1\n1 0\n").is_err());
    assert!(parse_blocks("3 2 2 1\n0 1\n").is_err());
}

#[test]
fn flag_transitivity_needs_enough_group() {
    let s = fano();
    let c7 = PermGroup::new(7, vec![Perm::from_vec(cycle(7))]).unwrap();
    let r = flag_transitive(&s, &c7).unwrap();
    assert_eq!((r.flags, r.flag_orbits, r.point_orbits, r.block_orbits, r.transitive), (21, 3, 1, 1, false));
    let mult = Perm::from_vec((0..7).map(|x| x * 2 % 7).collect());
    let frob = c7.with_generator(mult).unwrap();
    let r = flag_transitive(&s, &frob).unwrap();
    assert!(r.transitive);
    assert!(flag_transitive(&s, &PermGroup::trivial(8)).is_err());
}

#[test]
fn orbit_design_checks_its_base_block() {
    let c7 = PermGroup::new(7, vec![Perm::from_vec(cycle(7))]).unwrap();
    assert_eq!(orbit_design(&c7, &[0, 1, 3]).unwrap().blocks(), fano().blocks());
    assert!(orbit_design(&c7, &[]).is_err());
    assert!(orbit_design(&c7, &[0, 9]).is_err());
}

#[test]
fn search_with_a_transitive_subgroup_finds_a_known_design() {
    let plane = PlaneCtx::from_order(5).unwrap();
    let conic = plane.conic().points().to_vec();
    let g = on_points(&plane, &psl2_generators(plane.field()), &conic).unwrap();
    let fin = g.enumerate(CAYLEY_CAP).unwrap();
    let stab = fin.stabilizer_of_set(&[0, 1, 2]);
    let h = fin.subgroup_perm_group(&fin.generators_of(&stab));
    let space = SearchSpace {
        group: &g,
        group_order: 60,
        subgroups: std::slice::from_ref(&h),
        k: 3,
        lambda: 2,
        shape: BlockShape::OneOrbit,
        caps: SearchCaps::default(),
    };
    let out = search(&space).unwrap();
    let expect = brute_designs(&g.generators().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(), 6, 3, 2);
    for d in &out.designs {
        assert!(expect.contains(&d.orbit_keys));
        assert_eq!(d.stabilizer_orders, vec![60 / d.structure.b()]);
    }
    assert!(!out.designs.is_empty());
}

#[test]
fn search_caps_are_enforced() {
    let c7 = PermGroup::new(7, vec![Perm::from_vec(cycle(7))]).unwrap();
    let subs = [PermGroup::trivial(7)];
    let space = SearchSpace {
        group: &c7,
        group_order: 7,
        subgroups: &subs,
        k: 3,
        lambda: 1,
        shape: BlockShape::OneOrbit,
        caps: SearchCaps { candidates: 5, orbit_len: 100 },
    };
    assert!(matches!(search(&space), Err(fgdt_core::Error::CapExceeded { .. })));
    let wrong = [PermGroup::trivial(6)];
    assert!(search(&SearchSpace { subgroups: &wrong, caps: SearchCaps::default(), ..space }).is_err());
}

#[test]
fn hyperplane_of_the_sylow_subgroup_has_half_its_order() {
    for q in [4u32, 8, 16] {
        let plane = PlaneCtx::from_order(q).unwrap();
        let t = psl2_group(plane.field_arc().clone()).unwrap();
        let k = plane.field();
        let s = sylow2_even(&plane, &t).unwrap().s;
        let u = hyperplane(k, &s);
        assert_eq!(u.len(), q as usize / 2);
        let set: BTreeSet<_> = u.iter().copied().collect();
        assert!(u.iter().all(|a| u.iter().all(|b| set.contains(&a.mul(k, b)))));
    }
}

#[test]
fn prescribed_settings_respect_point_set_hypotheses() {
    assert!(prescribed::check_points(PointSet::Internal, 5).is_err());
    assert!(prescribed::check_points(PointSet::Internal, 8).is_err());
    assert!(prescribed::check_points(PointSet::External, 8).is_err());
    assert!(prescribed::check_points(PointSet::External, 9).is_err());
    assert!(prescribed::check_points(PointSet::External, 16).is_ok());
    let p = prescribed::general(PointSet::Internal, 7, 3, 2).unwrap();
    assert_eq!(p.group.degree(), 21);
    for d in p.run().unwrap().designs {
        assert!(is_two_design(d.structure.blocks(), 21, 2));
    }
}

proptest! {
    #[test]
    fn certification_agrees_with_direct_pair_counts(
        v in 4u32..9,
        raw in prop::collection::vec(prop::collection::btree_set(0u32..9, 3), 1..14),
        lambda in 1usize..4,
    ) {
        let blocks: Vec<Vec<u32>> = raw
            .into_iter()
            .map(|b| b.into_iter().map(|x| x % v).collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>())
            .filter(|b: &Vec<u32>| b.len() == 3)
            .collect();
        prop_assume!(!blocks.is_empty());
        let s = IncidenceStructure::new(v as usize, blocks.clone()).unwrap();
        let direct = is_two_design(&blocks, v, lambda);
        prop_assert_eq!(certify_design(&s, lambda).is_ok(), direct);
    }
}
