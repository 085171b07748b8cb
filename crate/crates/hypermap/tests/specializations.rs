//! Classical bijections recovered as special cases: blossom trees, constellations
//! and geodesic orientations of vertex-rooted hypermaps.

use hypermap::canonical::canonical_vertex;
use hypermap::charge::{ingirth, Charge};
use hypermap::map::{Root, RootKind};
use hypermap::mobile::Profile;
use hypermap::oracle::{
    enumerate_blossom_trees, enumerate_constellations, enumerate_hypermobiles,
    enumerate_rooted_hypermaps, geodesic_orientation, zero_weighted_orientations, EnumerationSpec,
};
use hypermap::orientation::{classify, weight_report, Class, Engine, Hyperorientation};
use hypermap::{Rational, RootedHypermap};

fn q(n: i128) -> Rational {
    Rational::from(n)
}

#[test]
fn one_weighted_mobiles_are_well_charged_blossom_trees() {
    for size in 1..=6 {
        let mobiles = enumerate_hypermobiles(size, &Profile::DWeighted(1));
        assert!(mobiles.iter().all(|t| t.excess() == -1));
        let trees = enumerate_blossom_trees(size)
            .into_iter()
            .filter(|t| t.is_well_charged())
            .count();
        assert_eq!(mobiles.len(), trees, "size {size}");
    }
}

#[test]
fn constellations_have_ingirth_p() {
    for p in 2..=3 {
        let mut count = 0;
        for edges in (p..=6).step_by(p) {
            for h in enumerate_constellations(p, edges) {
                for f in h.dark_faces() {
                    let r = RootedHypermap::new(h.clone(), Root::DarkFace(f)).unwrap();
                    assert_eq!(ingirth(&r), Some(p));
                    count += 1;
                }
            }
        }
        assert!(count > 0);
    }
}

#[test]
fn geodesic_orientation_is_the_unique_zero_weighted_one() {
    let spec = EnumerationSpec {
        max_edges: 5,
        kinds: vec![RootKind::Vertex],
        corners: false,
    };
    let mut count = 0;
    for r in enumerate_rooted_hypermaps(&spec) {
        let h = r.hypermap();
        let geo = geodesic_orientation(&r);
        assert_eq!(classify(&r, &geo, Engine::DualReachability), Class::InHZero);
        let in_class: Vec<_> = zero_weighted_orientations(&r)
            .into_iter()
            .filter(|o| classify(&r, o, Engine::DualReachability) == Class::InHZero)
            .collect();
        assert_eq!(in_class, vec![geo.clone()]);

        // Shifting every weight by one gives positive 1-way weights; the
        // resulting charge counts geodesic edges into each vertex and 0-way
        // edges around each light face, and the canonical orientation for it
        // is the shifted geodesic orientation.
        let m = h.map();
        let shifted_weights: Vec<Rational> = geo.weights().iter().map(|w| w + q(1)).collect();
        let shifted = Hyperorientation::from_flags(h, &geo.one_way_flags(), shifted_weights);
        let report = weight_report(h, &shifted);
        let mut charge = Charge::zero(h);
        charge.vertex = report.vertex.clone();
        for f in 0..m.num_faces() {
            let deg = q(m.face_degree(f) as i128);
            charge.face[f] = if h.is_dark_face(f) {
                -report.face[f] - deg
            } else {
                report.face[f] + deg
            };
        }
        assert_eq!(canonical_vertex(&r, &charge).unwrap(), shifted);
        count += 1;
    }
    assert!(count > 100);
}
