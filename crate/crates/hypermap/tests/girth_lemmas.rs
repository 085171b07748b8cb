//! Exhaustive checks of the charge girth condition and of the standard charges
//! encoding girth constraints.

use hypermap::bijection::{phi, psi};
use hypermap::canonical::canonical_vertex;
use hypermap::charge::{
    annular_dark_charge, annular_girths, annular_light_charge, embed_partial_charge, fits,
    girth_violation, ingirth, ingirth_charge, light_regions, partial_charge_fits, region_charge,
    separating_outward_cycles, sigma_d, sigma_girth_check, Charge, RegionScope,
};
use hypermap::map::RootKind;
use hypermap::mobile::NodeKind;
use hypermap::oracle::{
    balanced_partial_charges, enumerate_annular, enumerate_hypermaps_up_to, enumerate_maps,
    enumerate_rooted_hypermaps, rootings, EnumerationSpec,
};
use hypermap::{Rational, RootedHypermap};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

fn q(n: i128) -> Rational {
    Rational::from(n)
}

fn dark_rooted(max_edges: usize) -> Vec<RootedHypermap> {
    enumerate_rooted_hypermaps(&EnumerationSpec {
        max_edges,
        kinds: vec![RootKind::Dark],
        corners: false,
    })
}

/// A random integer charge with total zero.
fn random_balanced_charge(r: &RootedHypermap, rng: &mut StdRng) -> Charge {
    let mut c = Charge::zero(r.hypermap());
    for x in c.vertex.iter_mut().chain(c.face.iter_mut()) {
        *x = q(rng.random_range(-4..=4));
    }
    let total = c.total();
    c.face[0] -= total;
    c
}

#[test]
fn simply_connected_regions_suffice_for_balanced_charges() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut violated = 0;
    for r in enumerate_rooted_hypermaps(&EnumerationSpec::face_and_vertex_rooted(4)) {
        for _ in 0..40 {
            let c = random_balanced_charge(&r, &mut rng);
            let all = girth_violation(&r, &c, RegionScope::All).is_none();
            let simple = girth_violation(&r, &c, RegionScope::SimplyConnected).is_none();
            assert_eq!(all, simple);
            violated += usize::from(!all);
        }
    }
    assert!(violated > 0);
}

#[test]
fn sigma_d_is_d_on_simply_connected_regions() {
    for h in enumerate_hypermaps_up_to(5) {
        for d in [q(1), q(2), q(3), Rational::new(5, 2)] {
            let c = sigma_d(&h, d);
            assert_eq!(c.total(), d * 2);
            for (region, stats) in light_regions(&h) {
                if stats.simply_connected {
                    assert_eq!(region_charge(&region, &stats, &c), d);
                }
            }
        }
    }
}

#[test]
fn ingirth_charge_fits_exactly_for_ingirth_d() {
    let mut seen = [0usize; 2];
    for r in dark_rooted(5) {
        let d = r.map().face_degree(r.root_face().unwrap());
        if d > 3 {
            continue;
        }
        let c = ingirth_charge(&r, d as i128);
        let girth = ingirth(&r) == Some(d) && r.outer_face_is_simple();
        assert_eq!(sigma_girth_check(&r, &c).is_ok(), girth);
        assert_eq!(fits(&r, &c), girth);
        if girth {
            assert_eq!(c.total(), q(0));
        }
        seen[usize::from(girth)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn annular_dark_charge_encodes_separating_ingirth() {
    let mut seen = [0usize; 2];
    for a in enumerate_annular(5, RootKind::Dark) {
        let e = a.rooted.map().face_degree(a.outer()) as i128;
        let girths = annular_girths(&a);
        for d in 1..=3 {
            let c = annular_dark_charge(&a, d, e);
            let expected = girths
                .non_separating_ingirth
                .map_or(true, |g| g as i128 >= d)
                && girths.separating_ingirth == Some(e as usize);
            assert_eq!(sigma_girth_check(&a.rooted, &c).is_ok(), expected);
            if expected {
                assert_eq!(c.total(), q(0));
                assert!(a.rooted.outer_face_is_simple());
                assert!(fits(&a.rooted, &c));
            }
            if d == e {
                let mut plain = ingirth_charge(&a.rooted, d);
                let f1 = a.marked;
                plain.face[f1] = c.face[f1];
                assert_eq!(plain, c);
            }
            seen[usize::from(expected)] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn annular_light_charge_encodes_separating_outgirth() {
    let mut seen = [0usize; 2];
    for a in enumerate_annular(5, RootKind::Light) {
        let e = a.rooted.map().face_degree(a.outer());
        let girths = annular_girths(&a);
        let cycles = separating_outward_cycles(&a);
        let contour_simple = a.rooted.outer_face_is_simple();
        for d in 1..=3 {
            let c = annular_light_charge(&a, d, e as i128);
            assert_eq!(c.total(), q(0));
            // The contour is the only separating outward cycle of length e.
            let length_e = cycles.iter().filter(|&&l| l == e).count();
            let unique = length_e == usize::from(contour_simple);
            let expected = girths
                .non_separating_ingirth
                .map_or(true, |g| g as i128 >= d)
                && girths.separating_outgirth == Some(e)
                && unique;
            assert_eq!(sigma_girth_check(&a.rooted, &c).is_ok(), expected);
            seen[usize::from(expected)] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn partial_charges_on_maps_fit_like_their_embedding() {
    let mut seen = [0usize; 2];
    let mut rng = StdRng::seed_from_u64(5);
    for edges in 1..=4 {
        for h in enumerate_maps(edges) {
            for r in rootings(&h, &[RootKind::Vertex], false) {
                let v0 = r.root_vertex().unwrap();
                let nv = r.map().num_vertices();
                let mut charges = balanced_partial_charges(nv, v0);
                // Charges breaking the sign or total conditions.
                for _ in 0..5 {
                    charges.push((0..nv).map(|_| q(rng.random_range(-1..=3))).collect());
                }
                for sigma in charges {
                    let full = embed_partial_charge(&h, &sigma);
                    let fit = partial_charge_fits(&r, &sigma);
                    assert_eq!(fit, fits(&r, &full), "{sigma:?}");
                    seen[usize::from(fit)] += 1;
                }
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn mobiles_of_charged_maps_are_suitably_weighted() {
    let mut keys = std::collections::BTreeSet::new();
    let mut inputs = std::collections::BTreeSet::new();
    let mut count = 0;
    for edges in 1..=3 {
        for h in enumerate_maps(edges) {
            for r in rootings(&h, &[RootKind::Vertex], false) {
                let v0 = r.root_vertex().unwrap();
                let nv = r.map().num_vertices();
                for sigma in balanced_partial_charges(nv, v0) {
                    let full = embed_partial_charge(&h, &sigma);
                    if !fits(&r, &full) {
                        continue;
                    }
                    // Charges related by a symmetry of the rooted map are the same charged map.
                    let charged = r.canonical_form_with(|d| {
                        (sigma[r.map().vertex(d)] * 2).to_integer() as u64
                    });
                    if !inputs.insert(charged) {
                        continue;
                    }
                    let o = canonical_vertex(&r, &full).expect("fitting charge");
                    let img = phi(&r, &o).expect("class member");
                    let t = &img.mobile;
                    assert_eq!(t.excess(), 0);
                    for v in 0..t.num_nodes() {
                        match t.kind(v) {
                            NodeKind::DarkSquare => {
                                assert_eq!(t.degree(v), 2);
                                assert_eq!(t.weight(v), q(0));
                                let ends: Vec<usize> = t
                                    .rotation(v)
                                    .iter()
                                    .map(|s| match s {
                                        hypermap::mobile::Slot::Edge(e) => t.other_end(*e, v),
                                        hypermap::mobile::Slot::Bud => {
                                            panic!("bud at a dark square")
                                        }
                                    })
                                    .collect();
                                assert!(
                                    ends.iter().any(|&u| t.kind(u) != NodeKind::Round),
                                    "two round neighbours"
                                );
                            }
                            NodeKind::LightSquare => {
                                assert_eq!(t.weight(v), q(2) - q(t.degree(v) as i128))
                            }
                            NodeKind::Round => {}
                        }
                    }
                    for mv in 0..nv {
                        if let Some(node) = img.vertex_node[mv] {
                            assert_eq!(t.weight(node), sigma[mv]);
                        }
                    }
                    for f in h.light_faces() {
                        let node = img.face_node[f].expect("faces survive for a vertex root");
                        assert_eq!(t.degree(node), r.map().face_degree(f));
                    }
                    for e in t.edges() {
                        let round = e.ends.iter().any(|&u| t.kind(u) == NodeKind::Round);
                        assert_eq!(e.weight > q(0), round);
                    }
                    assert!(
                        keys.insert(t.canonical_form()),
                        "two charged maps share a mobile"
                    );
                    let (back, _) = psi(t).unwrap();
                    assert_eq!(back.canonical_form(), r.canonical_form());
                    count += 1;
                }
            }
        }
    }
    assert!(count > 0);
}
