//! Canonical charge-weighted orientations against brute-force search.

use hypermap::canonical::{canonical_orientation, d_weighted_orientation};
use hypermap::charge::{fits, ingirth, ingirth_charge};
use hypermap::map::RootKind;
use hypermap::oracle::{
    enumerate_rooted_hypermaps, enumerate_sigma_weighted_orientations, small_charges,
    EnumerationSpec,
};
use hypermap::orientation::Class;
use hypermap::HypermapError;

#[test]
fn d_weighted_orientation_exists_exactly_for_ingirth_d() {
    let spec = EnumerationSpec {
        max_edges: 5,
        kinds: vec![RootKind::Dark],
        corners: false,
    };
    let mut stats = [0usize; 4];
    for r in enumerate_rooted_hypermaps(&spec) {
        let d = r.map().face_degree(r.root_face().unwrap());
        if d > 3 {
            continue;
        }
        let charge = ingirth_charge(&r, d as i128);
        let in_class: Vec<_> = enumerate_sigma_weighted_orientations(&r, &charge)
            .into_iter()
            .filter(|(_, c)| *c == Class::InHMinus)
            .map(|(o, _)| o)
            .collect();
        let girth_ok = ingirth(&r) == Some(d);
        let simple = r.outer_face_is_simple();
        assert_eq!(fits(&r, &charge), girth_ok && simple, "fits vs ingirth");
        if simple {
            assert_eq!(in_class.len() == 1, girth_ok, "existence vs ingirth");
            assert!(in_class.len() <= 1);
        }
        match d_weighted_orientation(&r, d) {
            Ok(o) => {
                assert!(girth_ok && simple);
                assert_eq!(o, in_class[0]);
                stats[0] += 1;
            }
            Err(HypermapError::IngirthMismatch { found, .. }) => {
                assert!(simple && !girth_ok);
                assert_eq!(found, ingirth(&r));
                stats[1] += 1;
            }
            Err(HypermapError::OuterFaceNotSimple) => {
                assert!(!simple);
                stats[2] += 1;
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    println!(
        "found {}, mismatched {}, non-simple {}",
        stats[0], stats[1], stats[2]
    );
    assert!(stats[0] > 0 && stats[1] > 0);
}

fn expected_class(kind: RootKind) -> Class {
    match kind {
        RootKind::Light => Class::InHPlus,
        RootKind::Dark => Class::InHMinus,
        RootKind::Vertex => Class::InHZero,
    }
}

#[test]
fn canonical_orientation_matches_brute_force_on_small_charges() {
    let spec = EnumerationSpec::face_and_vertex_rooted(3);
    let mut counts = [0usize; 2];
    for r in enumerate_rooted_hypermaps(&spec) {
        if r.map().num_faces() > 4 || (r.kind() == RootKind::Dark && !r.outer_face_is_simple()) {
            continue;
        }
        for charge in small_charges(&r) {
            let class = expected_class(r.kind());
            let found: Vec<_> = enumerate_sigma_weighted_orientations(&r, &charge)
                .into_iter()
                .filter(|(_, c)| *c == class)
                .map(|(o, _)| o)
                .collect();
            let fit = fits(&r, &charge);
            assert!(found.len() <= 1, "two weighted orientations in one class");
            assert_eq!(found.len() == 1, fit, "existence vs fitting");
            match canonical_orientation(&r, &charge) {
                Ok(o) => {
                    assert!(fit);
                    assert_eq!(o, found[0]);
                    counts[0] += 1;
                }
                Err(HypermapError::NotFitting(_)) => {
                    assert!(!fit);
                    counts[1] += 1;
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }
    println!("fitting {}, non-fitting {}", counts[0], counts[1]);
    assert!(counts[0] > 0 && counts[1] > 0);
}
