//! Canonical charge-weighted orientations. Light-rooted hypermaps whose light
//! faces are charged by their degree are solved with a minimal hyperflow on
//! the star graph; general light charges go through an edge subdivision with
//! sea-stars; dark and vertex roots reduce to the light and dark cases.

use crate::charge::{ingirth, ingirth_charge, Charge};
use crate::error::{HypermapError, Result};
use crate::flow::{alpha_demand, find_alpha_hyperflow, gamma, minimize_hyperflow, star_graph};
use crate::map::{Hypermap, Root, RootKind, RootedHypermap};
use crate::orientation::{classify, weight_report, Class, Engine, Hyperorientation};
use crate::surgery::{add_outer_digons, add_root_loop, add_sea_stars, subdivide_edges};
use crate::Rational;

fn q(n: i128) -> Rational {
    Rational::from(n)
}

fn degree(h: &Hypermap, f: usize) -> Rational {
    q(h.map().face_degree(f) as i128)
}

/// The first way in which `o` fails to be weighted according to `charge`,
/// under the rules matching the root kind of `r`.
pub fn weighting_violation(
    r: &RootedHypermap,
    charge: &Charge,
    o: &Hyperorientation,
) -> Option<String> {
    let h = r.hypermap();
    let m = h.map();
    for e in 0..m.num_edges() {
        let w = o.weight(e);
        if o.is_one_way(e) && w <= q(0) {
            return Some(format!("1-way edge {e} has weight {w}"));
        }
        if !o.is_one_way(e) && w > q(0) {
            return Some(format!("0-way edge {e} has weight {w}"));
        }
    }
    let report = weight_report(h, o);
    let dark_root = (r.kind() == RootKind::Dark).then(|| r.root_face().expect("face root"));
    for f in 0..m.num_faces() {
        let expected = if Some(f) == dark_root {
            -charge.face[f]
        } else if h.is_dark_face(f) {
            -charge.face[f] - degree(h, f)
        } else {
            charge.face[f] - degree(h, f)
        };
        if report.face[f] != expected {
            return Some(format!(
                "face {f} has weight {} instead of {expected}",
                report.face[f]
            ));
        }
    }
    let mut outer_vertex = vec![false; m.num_vertices()];
    if dark_root.is_some() {
        for v in r.outer_vertices() {
            outer_vertex[v] = true;
        }
        for e in r.outer_edges() {
            if o.weight(e) != q(1) {
                return Some(format!("outer edge {e} has weight {}", o.weight(e)));
            }
        }
    }
    for v in 0..m.num_vertices() {
        let expected = charge.vertex[v] + if outer_vertex[v] { q(1) } else { q(0) };
        if report.vertex[v] != expected {
            return Some(format!(
                "vertex {v} has weight {} instead of {expected}",
                report.vertex[v]
            ));
        }
    }
    None
}

fn expected_class(kind: RootKind) -> Class {
    match kind {
        RootKind::Light => Class::InHPlus,
        RootKind::Dark => Class::InHMinus,
        RootKind::Vertex => Class::InHZero,
    }
}

/// Checks an orientation produced by a reduction. A charge-weighted
/// orientation in the class of the root exists only for fitting charges, so a
/// failure here means the charge does not fit.
fn certify(r: &RootedHypermap, charge: &Charge, o: Hyperorientation) -> Result<Hyperorientation> {
    if let Some(why) = weighting_violation(r, charge, &o) {
        return Err(HypermapError::NotFitting(format!(
            "no charge-weighted orientation: {why}"
        )));
    }
    if classify(r, &o, Engine::DualReachability) != expected_class(r.kind()) {
        return Err(HypermapError::NotFitting(
            "the minimal charge-weighted orientation is not in the class of the root (girth condition fails)".into(),
        ));
    }
    Ok(o)
}

/// Sign and normalization conditions of a fitting charge, which are cheap to
/// check; the girth condition is left to the orientation itself.
pub fn check_normalization(r: &RootedHypermap, charge: &Charge) -> Result<()> {
    let h = r.hypermap();
    let m = h.map();
    let fail = |s: String| Err(HypermapError::NotFitting(s));
    if charge.vertex.len() != m.num_vertices() || charge.face.len() != m.num_faces() {
        return fail("charge has the wrong number of vertices or faces".into());
    }
    if charge.total() != q(0) {
        return fail(format!("total charge is {}", charge.total()));
    }
    let mut zero_vertex = vec![false; m.num_vertices()];
    match r.root() {
        Root::LightFace(f) => {
            if charge.face[f] != degree(h, f) {
                return fail(format!(
                    "outer face has charge {} but degree {}",
                    charge.face[f],
                    degree(h, f)
                ));
            }
        }
        Root::DarkFace(f) => {
            if charge.face[f] != -degree(h, f) {
                return fail(format!(
                    "outer face has charge {} but degree {}",
                    charge.face[f],
                    degree(h, f)
                ));
            }
            for v in r.outer_vertices() {
                zero_vertex[v] = true;
            }
        }
        Root::Vertex(v) => zero_vertex[v] = true,
        Root::Corner(_) => {
            return Err(HypermapError::InvalidRoot(
                "charges need a face or vertex root".into(),
            ))
        }
    }
    for v in 0..m.num_vertices() {
        let c = charge.vertex[v];
        if zero_vertex[v] && c != q(0) {
            return fail(format!("root or outer vertex {v} has charge {c}"));
        }
        if !zero_vertex[v] && c <= q(0) {
            return fail(format!("vertex {v} has nonpositive charge {c}"));
        }
    }
    Ok(())
}

/// Light root with every light face charged by its degree: the image under
/// the star-graph correspondence of the minimal hyperflow.
pub fn canonical_light_degcase(r: &RootedHypermap, charge: &Charge) -> Result<Hyperorientation> {
    if r.kind() != RootKind::Light {
        return Err(HypermapError::InvalidRoot(
            "expected a light-rooted hypermap".into(),
        ));
    }
    check_normalization(r, charge)?;
    let o = degcase_orientation(r, charge)?;
    certify(r, charge, o)
}

fn degcase_orientation(r: &RootedHypermap, charge: &Charge) -> Result<Hyperorientation> {
    let not_fitting = |e: HypermapError| HypermapError::NotFitting(e.to_string());
    let alpha = alpha_demand(r, charge).map_err(not_fitting)?;
    let star = star_graph(r.hypermap(), r.root_face().expect("light root"));
    let flow = find_alpha_hyperflow(star.graph(), &alpha).map_err(not_fitting)?;
    let minimal = minimize_hyperflow(&star.plane, &flow);
    Ok(gamma(r.hypermap(), &minimal))
}

/// Whether every light face is charged by its degree.
pub fn light_faces_charged_by_degree(h: &Hypermap, charge: &Charge) -> bool {
    h.light_faces().all(|f| charge.face[f] == degree(h, f))
}

/// The subdivision factor: the least integer above one plus the number of
/// edges plus the total absolute charge.
pub fn subdivision_factor(h: &Hypermap, charge: &Charge) -> usize {
    let bound: Rational = q(1 + h.map().num_edges() as i128)
        + charge
            .vertex
            .iter()
            .chain(charge.face.iter())
            .map(|c| if *c < q(0) { -*c } else { *c })
            .sum::<Rational>();
    (bound.floor().to_integer() + 1) as usize
}

/// Light root with arbitrary rational charges, solved on the hypermap whose
/// edges are subdivided `k` times and whose inner light faces hold sea-stars.
pub fn canonical_light_general(r: &RootedHypermap, charge: &Charge) -> Result<Hyperorientation> {
    if r.kind() != RootKind::Light {
        return Err(HypermapError::InvalidRoot(
            "expected a light-rooted hypermap".into(),
        ));
    }
    check_normalization(r, charge)?;
    let h = r.hypermap();
    let m = h.map();
    let f0 = r.root_face().expect("light root");
    let k = subdivision_factor(h, charge);
    let kq = q(k as i128);

    let sub = subdivide_edges(h, k);
    let hk = &sub.hypermap;
    // Original darts keep their indices, so a face of the subdivision is
    // matched with a face of `h` through any original dart on it.
    let mut original_face = vec![None; hk.map().num_faces()];
    for d in 0..m.n_darts() {
        original_face[hk.map().face(d)] = Some(m.face(d));
    }
    let inner_light: Vec<usize> = hk
        .light_faces()
        .filter(|&f| original_face[f] != Some(f0))
        .collect();
    let stars = add_sea_stars(hk, &inner_light, k - 1);
    let big = &stars.hypermap;
    let bm = big.map();

    let mut big_charge = Charge::zero(big);
    for v in 0..bm.num_vertices() {
        big_charge.vertex[v] = kq;
    }
    for d in 0..m.n_darts() {
        big_charge.vertex[bm.vertex(d)] = kq * charge.vertex[m.vertex(d)];
    }
    for f in 0..bm.num_faces() {
        if !big.is_dark_face(f) {
            big_charge.face[f] = degree(big, f);
        }
    }
    for d in 0..m.n_darts() {
        let f = m.face(d);
        if h.is_dark_face(f) {
            let delta = degree(h, f);
            big_charge.face[bm.face(d)] = kq * charge.face[f] - kq * kq * delta + kq * delta;
        }
    }
    for &fk in &inner_light {
        let f = original_face[fk].expect("face of the input");
        let delta = degree(h, f);
        let star = bm.face(stars.sea_star_of[fk].expect("sea-star placed"));
        big_charge.face[star] = kq * charge.face[f] - kq * kq * (kq - q(1)) * delta;
    }
    let big_root = RootedHypermap::new(big.clone(), Root::LightFace(bm.face(r.outer_darts()[0])))?;
    let big_o = degcase_orientation(&big_root, &big_charge)?;

    let mut o = Hyperorientation::zero(h);
    for e in 0..m.num_edges() {
        let path = &sub.paths[e];
        let w: Vec<Rational> = path.iter().map(|&d| big_o.weight(bm.edge(d))).collect();
        let inner = m.face(h.light_dart(e)) != f0;
        if let Some(why) = sea_path_defect(
            &w,
            k,
            inner.then(|| big_o.weight(bm.edge(stars.arcs[path[0]][0]))),
        ) {
            return Err(HypermapError::NotFitting(format!("edge {e}: {why}")));
        }
        let total: Rational = w.iter().sum();
        let projected = total / kq - (kq - q(1));
        o.set(h, e, projected > q(0), projected);
    }
    certify(r, charge, o)
}

/// Checks the weights `w` of the sub-edges of one edge, in clockwise order
/// around its dark face: full weight `k` up to some position, zero after it.
/// For an edge with an inner light face, `first_arc` is the weight of the
/// sea-edge entering the first subdivision vertex, which must be zero.
fn sea_path_defect(w: &[Rational], k: usize, first_arc: Option<Rational>) -> Option<String> {
    let kq = q(k as i128);
    let j = w.iter().position(|x| *x != kq).unwrap_or(w.len() - 1);
    if w[j + 1..].iter().any(|x| *x != q(0)) {
        return Some(format!(
            "sub-edge weights {w:?} do not follow the full-then-empty pattern"
        ));
    }
    match first_arc {
        Some(a) if a != q(0) => Some(format!("first sea-edge carries weight {a}")),
        _ => None,
    }
}

/// Any light root: the direct flow when light faces are charged by their
/// degree, the subdivision otherwise.
pub fn canonical_light(r: &RootedHypermap, charge: &Charge) -> Result<Hyperorientation> {
    if light_faces_charged_by_degree(r.hypermap(), charge) {
        canonical_light_degcase(r, charge)
    } else {
        canonical_light_general(r, charge)
    }
}

/// Dark root: a digon is glued along every outer edge, the light-rooted result
/// is solved, and the outer edges become a counterclockwise circuit of weight 1.
pub fn canonical_dark(r: &RootedHypermap, charge: &Charge) -> Result<Hyperorientation> {
    if r.kind() != RootKind::Dark {
        return Err(HypermapError::InvalidRoot(
            "expected a dark-rooted hypermap".into(),
        ));
    }
    if !r.outer_face_is_simple() {
        return Err(HypermapError::OuterFaceNotSimple);
    }
    check_normalization(r, charge)?;
    let h = r.hypermap();
    let m = h.map();
    let f0 = r.root_face().expect("dark root");
    let od = add_outer_digons(r)?;
    let big = od.rooted.hypermap();
    let bm = big.map();
    let mut big_charge = Charge::zero(big);
    for d in 0..m.n_darts() {
        big_charge.vertex[bm.vertex(d)] = charge.vertex[m.vertex(d)];
        if m.face(d) != f0 {
            big_charge.face[bm.face(d)] = charge.face[m.face(d)];
        }
    }
    for v in r.outer_vertices() {
        let d = m.vertex_darts(v)[0];
        big_charge.vertex[bm.vertex(d)] = q(1);
    }
    for &(_, _, digon) in &od.added {
        big_charge.face[bm.face(digon)] = q(-3);
    }
    let new_outer = od.rooted.root_face().expect("light root");
    big_charge.face[new_outer] = degree(big, new_outer);
    let big_o = canonical_light(&od.rooted, &big_charge)?;
    let mut o = Hyperorientation::zero(h);
    let outer = r.outer_edges();
    for e in 0..m.num_edges() {
        if outer.binary_search(&e).is_ok() {
            o.set(h, e, true, q(1));
        } else {
            let be = bm.edge(h.dark_dart(e));
            o.set(h, e, big_o.is_one_way(be), big_o.weight(be));
        }
    }
    certify(r, charge, o)
}

/// Vertex root: a loop is added in a light corner of the root vertex, the
/// dark-rooted result is solved, and the loop is removed.
pub fn canonical_vertex(r: &RootedHypermap, charge: &Charge) -> Result<Hyperorientation> {
    let v0 = r
        .root_vertex()
        .filter(|_| r.kind() == RootKind::Vertex)
        .ok_or_else(|| HypermapError::InvalidRoot("expected a vertex-rooted hypermap".into()))?;
    check_normalization(r, charge)?;
    let h = r.hypermap();
    let m = h.map();
    let corner = *m
        .vertex_darts(v0)
        .iter()
        .find(|&&d| !h.is_dark_dart(d))
        .expect("every vertex has a light corner");
    let f0 = m.face(corner);
    let rl = add_root_loop(r, corner)?;
    let big = rl.rooted.hypermap();
    let bm = big.map();
    let mut big_charge = Charge::zero(big);
    for d in 0..m.n_darts() {
        big_charge.vertex[bm.vertex(d)] = charge.vertex[m.vertex(d)];
        if m.face(d) != f0 {
            big_charge.face[bm.face(d)] = charge.face[m.face(d)];
        }
    }
    big_charge.face[bm.face(rl.p)] = q(-1);
    big_charge.face[bm.face(rl.q)] = charge.face[f0] + q(1);
    let big_o = canonical_dark(&rl.rooted, &big_charge)?;
    let mut o = Hyperorientation::zero(h);
    for e in 0..m.num_edges() {
        let be = bm.edge(h.dark_dart(e));
        o.set(h, e, big_o.is_one_way(be), big_o.weight(be));
    }
    certify(r, charge, o)
}

/// The canonical orientation for the root kind of `r`.
pub fn canonical_orientation(r: &RootedHypermap, charge: &Charge) -> Result<Hyperorientation> {
    match r.kind() {
        RootKind::Light => canonical_light(r, charge),
        RootKind::Dark => canonical_dark(r, charge),
        RootKind::Vertex => canonical_vertex(r, charge),
    }
}

/// The unique `d`-weighted orientation in the dark-rooted class of a
/// hypermap whose outer face has degree `d` and whose ingirth is `d`.
pub fn d_weighted_orientation(r: &RootedHypermap, d: usize) -> Result<Hyperorientation> {
    let f0 = r
        .root_face()
        .filter(|_| r.kind() == RootKind::Dark)
        .ok_or_else(|| HypermapError::InvalidRoot("expected a dark-rooted hypermap".into()))?;
    let mismatch = || HypermapError::IngirthMismatch {
        expected: d,
        found: ingirth(r),
    };
    if r.map().face_degree(f0) != d {
        return Err(HypermapError::InvalidRoot(format!(
            "outer face has degree {} instead of {d}",
            r.map().face_degree(f0)
        )));
    }
    match canonical_dark(r, &ingirth_charge(r, d as i128)) {
        Err(HypermapError::NotFitting(_)) => Err(mismatch()),
        other => other,
    }
}
