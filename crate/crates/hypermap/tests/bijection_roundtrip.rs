//! Exhaustive round trips of the master bijections on small instances.

use hypermap::bijection::{
    classify_by_tree, in_extended_class, oriented_key, outerplanar_word, phi, psi, psi_sprouts,
    sprout_word,
};
use hypermap::map::RootKind;
use hypermap::mobile::NodeKind;
use hypermap::oracle::{
    all_orientations, distinct_weight, enumerate_mobile_shapes, enumerate_rooted_hypermaps,
    with_weights, EnumerationSpec,
};
use hypermap::orientation::{classify, weight_report, Class, Engine};
use hypermap::{Rational, RootedHypermap};

fn face_and_vertex_multisets(
    r: &RootedHypermap,
    o: &hypermap::orientation::Hyperorientation,
    img: &hypermap::bijection::PhiImage,
) -> (
    Vec<(bool, usize, Rational)>,
    Vec<(bool, usize, Rational)>,
    Vec<(usize, Rational)>,
    Vec<(usize, Rational)>,
) {
    let h = r.hypermap();
    let m = h.map();
    let report = weight_report(h, o);
    let mut faces: Vec<_> = (0..m.num_faces())
        .filter(|&f| img.face_node[f].is_some())
        .map(|f| (h.is_dark_face(f), m.face_degree(f), report.face[f]))
        .collect();
    let t = &img.mobile;
    let mut squares: Vec<_> = (0..t.num_nodes())
        .filter(|&v| t.kind(v) != NodeKind::Round)
        .map(|v| (t.kind(v) == NodeKind::DarkSquare, t.degree(v), t.weight(v)))
        .collect();
    let mut indegree = vec![0usize; m.num_vertices()];
    for e in 0..m.num_edges() {
        if let hypermap::orientation::EdgeStatus::OneWay(tail) = o.status(e) {
            indegree[m.head(tail)] += 1;
        }
    }
    let mut vertices: Vec<_> = (0..m.num_vertices())
        .filter(|&v| img.vertex_node[v].is_some())
        .map(|v| (indegree[v], report.vertex[v]))
        .collect();
    let mut rounds: Vec<_> = (0..t.num_nodes())
        .filter(|&v| t.kind(v) == NodeKind::Round)
        .map(|v| (t.degree(v), t.weight(v)))
        .collect();
    faces.sort();
    squares.sort();
    vertices.sort();
    rounds.sort();
    (faces, squares, vertices, rounds)
}

fn check_maps(max_edges: usize) -> usize {
    let mut checked = 0;
    for r in enumerate_rooted_hypermaps(&EnumerationSpec::face_and_vertex_rooted(max_edges)) {
        for o in all_orientations(r.hypermap(), distinct_weight) {
            let class = classify(&r, &o, Engine::DualReachability);
            assert_eq!(
                class,
                classify(&r, &o, Engine::CircuitEnumeration),
                "engines disagree"
            );
            if in_extended_class(&r, &o) {
                assert_eq!(class, classify_by_tree(&r, &o), "tree criterion disagrees");
            }
            if class == Class::None {
                continue;
            }
            let img = phi(&r, &o).expect("phi on class member");
            let excess = img.mobile.excess();
            let outer = r.root_face().map_or(0, |f| r.map().face_degree(f) as i64);
            match r.kind() {
                RootKind::Light => assert_eq!(excess, outer),
                RootKind::Dark => assert_eq!(excess, -outer),
                RootKind::Vertex => assert_eq!(excess, 0),
            }
            let (faces, squares, vertices, rounds) = face_and_vertex_multisets(&r, &o, &img);
            assert_eq!(faces, squares);
            assert_eq!(vertices, rounds);
            let (back, bo) = psi(&img.mobile).expect("psi on phi image");
            assert_eq!(
                oriented_key(&back, &bo),
                oriented_key(&r, &o),
                "psi(phi(X)) != X"
            );
            let (back2, bo2) = psi_sprouts(&img.mobile).expect("psi_sprouts on phi image");
            assert_eq!(oriented_key(&back2, &bo2), oriented_key(&r, &o));
            checked += 1;
        }
    }
    checked
}

#[test]
fn psi_inverts_phi_up_to_five_edges() {
    let checked = check_maps(5);
    println!("checked {checked} oriented rooted hypermaps");
    assert!(checked > 0);
}

#[test]
fn phi_inverts_psi_up_to_six_edges_and_buds() {
    for size in 1..=6 {
        for shape in enumerate_mobile_shapes(size) {
            let t = with_weights(&shape, distinct_weight);
            let word = outerplanar_word(&t).unwrap_or_else(|e| panic!("{}: {e}", t.to_mob()));
            assert!(sprout_word(&t).cyclically_equal(&word), "{}", t.to_mob());
            let (r, o) = psi(&t).unwrap_or_else(|e| panic!("{}: {e}", t.to_mob()));
            let (r2, o2) = psi_sprouts(&t).unwrap();
            assert_eq!(oriented_key(&r, &o), oriented_key(&r2, &o2));
            let expected = match t.excess().signum() {
                1 => Class::InHPlus,
                -1 => Class::InHMinus,
                _ => Class::InHZero,
            };
            assert_eq!(
                classify(&r, &o, Engine::DualReachability),
                expected,
                "{}",
                t.to_mob()
            );
            let img = phi(&r, &o).unwrap();
            assert_eq!(
                img.mobile.canonical_form(),
                t.canonical_form(),
                "{}",
                t.to_mob()
            );
        }
    }
}
