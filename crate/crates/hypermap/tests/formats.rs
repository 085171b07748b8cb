//! Text formats: documents re-parse to equal values, and canonical forms do
//! not depend on dart labels.

use std::sync::OnceLock;

use hypermap::charge::Charge;
use hypermap::io::Document;
use hypermap::map::RootKind;
use hypermap::mobile::Hypermobile;
use hypermap::oracle::{enumerate_mobile_shapes, enumerate_rooted_hypermaps, with_weights};
use hypermap::orientation::Hyperorientation;
use hypermap::{CombinatorialMap, Hypermap, Rational, Root, RootedHypermap};
use proptest::prelude::*;
use proptest::sample::Index;

fn rooted_pool() -> &'static [RootedHypermap] {
    static POOL: OnceLock<Vec<RootedHypermap>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut spec = hypermap::oracle::EnumerationSpec::face_and_vertex_rooted(4);
        spec.corners = true;
        enumerate_rooted_hypermaps(&spec)
    })
}

fn mobile_pool() -> &'static [Hypermobile] {
    static POOL: OnceLock<Vec<Hypermobile>> = OnceLock::new();
    POOL.get_or_init(|| (1..=5).flat_map(enumerate_mobile_shapes).collect())
}

/// A document with a random orientation, random charges and, for face
/// roots, possibly a marked face.
fn decorated(r: &RootedHypermap, seeds: &[i64], mark: Option<Index>) -> Document {
    let h = r.hypermap();
    let m = h.map();
    let value = |i: usize| {
        let s = seeds[i % seeds.len()];
        Rational::new(s as i128 % 7, 1 + (s.unsigned_abs() as i128 % 3))
    };
    let one_way: Vec<bool> = (0..m.num_edges())
        .map(|e| seeds[e % seeds.len()] % 2 == 0)
        .collect();
    let weights = (0..m.num_edges()).map(|e| value(e + 1)).collect();
    let mut charge = Charge::zero(h);
    for (i, x) in charge
        .vertex
        .iter_mut()
        .chain(charge.face.iter_mut())
        .enumerate()
    {
        *x = value(i + 3);
    }
    let mut doc = Document::new(r.clone());
    doc.orientation = Some(Hyperorientation::from_flags(h, &one_way, weights));
    doc.charge = Some(charge);
    if let (Some(root), Some(i)) = (r.root_face(), mark) {
        let others: Vec<usize> = (0..m.num_faces()).filter(|&f| f != root).collect();
        if !others.is_empty() {
            doc.marked = Some(others[i.index(others.len())]);
        }
    }
    doc
}

/// The same document with every dart `d` renamed `p[d]`.
fn relabeled(doc: &Document, p: &[usize]) -> Document {
    let h = doc.rooted.hypermap();
    let m = h.map();
    let n = m.n_darts();
    let mut inverse = vec![0; n];
    for (d, &pd) in p.iter().enumerate() {
        inverse[pd] = d;
    }
    let alpha = (0..n).map(|d| p[m.alpha(inverse[d])]).collect();
    let sigma = (0..n).map(|d| p[m.sigma(inverse[d])]).collect();
    let map = CombinatorialMap::new(alpha, sigma).expect("relabeling keeps a map");
    let old = |d: usize| inverse[d];
    let dark = (0..map.num_faces())
        .map(|f| h.is_dark_dart(old(map.face_darts(f)[0])))
        .collect();
    let h2 = Hypermap::with_colors(map, dark).expect("relabeling keeps the coloring");
    let m2 = h2.map();
    let face = |f: usize| m2.face(p[m.face_darts(f)[0]]);
    let root = match doc.rooted.root() {
        Root::DarkFace(f) => Root::DarkFace(face(f)),
        Root::LightFace(f) => Root::LightFace(face(f)),
        Root::Vertex(v) => Root::Vertex(m2.vertex(p[m.vertex_darts(v)[0]])),
        Root::Corner(d) => Root::Corner(p[d]),
    };
    let edge_of_new = |e: usize| m.edge(old(m2.edge_darts(e)[0]));
    let mut out = Document::new(RootedHypermap::new(h2.clone(), root).expect("valid root"));
    out.marked = doc.marked.map(face);
    out.orientation = doc.orientation.as_ref().map(|o| {
        let flags: Vec<bool> = (0..m2.num_edges())
            .map(|e| o.is_one_way(edge_of_new(e)))
            .collect();
        let weights = (0..m2.num_edges())
            .map(|e| o.weight(edge_of_new(e)))
            .collect();
        Hyperorientation::from_flags(&h2, &flags, weights)
    });
    out.charge = doc.charge.as_ref().map(|c| Charge {
        vertex: (0..m2.num_vertices())
            .map(|v| c.vertex[m.vertex(old(m2.vertex_darts(v)[0]))])
            .collect(),
        face: (0..m2.num_faces())
            .map(|f| c.face[m.face(old(m2.face_darts(f)[0]))])
            .collect(),
    });
    out
}

fn permutation(n: usize, keys: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&d| (keys[d % keys.len()].wrapping_mul(d as u64 + 1), d));
    let mut p = vec![0; n];
    for (new, &d) in order.iter().enumerate() {
        p[d] = new;
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn documents_reparse_to_equal_values(
        pick in any::<Index>(),
        seeds in prop::collection::vec(-20i64..20, 1..12),
        mark in prop::option::of(any::<Index>()),
    ) {
        let pool = rooted_pool();
        let doc = decorated(&pool[pick.index(pool.len())], &seeds, mark);
        let text = doc.to_hmap();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(back.to_hmap(), text);
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn canonical_documents_ignore_dart_labels(
        pick in any::<Index>(),
        seeds in prop::collection::vec(-20i64..20, 1..12),
        mark in prop::option::of(any::<Index>()),
        keys in prop::collection::vec(any::<u64>(), 1..20),
    ) {
        let pool = rooted_pool();
        let doc = decorated(&pool[pick.index(pool.len())], &seeds, mark);
        let p = permutation(doc.rooted.map().n_darts(), &keys);
        let moved = relabeled(&doc, &p);
        let canonical = doc.canonical().to_hmap();
        prop_assert_eq!(moved.canonical().to_hmap(), canonical.clone());
        prop_assert_eq!(Document::parse(&canonical).unwrap().canonical().to_hmap(), canonical);
    }

    #[test]
    fn mobiles_reparse_to_equal_values(
        pick in any::<Index>(),
        weights in prop::collection::vec((-5i128..5, 1i128..4), 1..12),
    ) {
        let pool = mobile_pool();
        let shape = &pool[pick.index(pool.len())];
        let t = with_weights(shape, |e| {
            let (a, b) = weights[e % weights.len()];
            Rational::new(a, b)
        });
        let text = t.to_mob();
        let back = Hypermobile::from_mob(&text).unwrap();
        prop_assert_eq!(back.to_mob(), text);
        prop_assert_eq!(back.canonical_form(), t.canonical_form());
    }
}

#[test]
fn the_pool_covers_every_root_kind() {
    let kinds: std::collections::BTreeSet<_> = rooted_pool()
        .iter()
        .map(|r| format!("{:?}", r.root()))
        .map(|s| s[..4].to_string())
        .collect();
    assert!(kinds.len() >= 4, "{kinds:?}");
    assert!(rooted_pool().iter().any(|r| r.kind() == RootKind::Light));
}
