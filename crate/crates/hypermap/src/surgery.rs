//! Structural surgery on hypermaps: edge subdivision, sea-stars, outer digons
//! and the root loop. Every operation keeps the darts of its input at their
//! original indices and appends new darts, so callers can restrict results
//! back to the input by index.

use crate::error::{HypermapError, Result};
use crate::map::{bicolor, CombinatorialMap, Dart, Hypermap, Root, RootedHypermap};

/// Mutable pair of permutations used while growing a map.
struct MapBuilder {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
}

impl MapBuilder {
    fn from_map(m: &CombinatorialMap) -> Self {
        MapBuilder {
            alpha: m.alpha_perm().to_vec(),
            sigma: m.sigma_perm().to_vec(),
        }
    }

    /// Adds an edge whose two darts are isolated vertices until inserted.
    fn new_edge(&mut self) -> (Dart, Dart) {
        let a = self.alpha.len();
        let b = a + 1;
        self.alpha.extend([b, a]);
        self.sigma.extend([a, b]);
        (a, b)
    }

    /// Inserts an isolated dart right after `anchor` in counterclockwise order.
    fn insert_after(&mut self, anchor: Dart, dart: Dart) {
        debug_assert_eq!(self.sigma[dart], dart);
        let after = self.sigma[anchor];
        self.sigma[anchor] = dart;
        self.sigma[dart] = after;
    }

    /// Makes the given isolated darts one vertex, in counterclockwise order.
    fn make_vertex(&mut self, darts: &[Dart]) {
        for (i, &d) in darts.iter().enumerate() {
            self.sigma[d] = darts[(i + 1) % darts.len()];
        }
    }

    /// Builds the map and colors it so that the original dart 0 keeps its color.
    fn build_like(self, original: &Hypermap) -> Hypermap {
        let map =
            CombinatorialMap::new(self.alpha, self.sigma).expect("surgery preserves map validity");
        let h = bicolor(map).expect("surgery preserves planarity and bicolorability");
        if h.is_dark_dart(0) == original.is_dark_dart(0) {
            h
        } else {
            h.swap_colors()
        }
    }
}

/// Result of subdividing every edge into a path of `k` edges.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub hypermap: Hypermap,
    pub k: usize,
    /// For each original edge, the light-side darts of its sub-edges `e_1..e_k`,
    /// ordered along the original light dart (clockwise around the dark face).
    pub paths: Vec<Vec<Dart>>,
}

/// Subdivides every edge of `h` into a path of `k >= 1` edges; the new
/// vertices have degree 2 and every face degree is multiplied by `k`.
pub fn subdivide_edges(h: &Hypermap, k: usize) -> Subdivision {
    assert!(k >= 1, "subdivision factor must be positive");
    let m = h.map();
    let mut b = MapBuilder::from_map(m);
    let mut paths = Vec::with_capacity(m.num_edges());
    for e in 0..m.num_edges() {
        let light = h.light_dart(e);
        let dark = h.dark_dart(e);
        let mut path = vec![light];
        // `tail` is the dart of the current sub-edge on the light side.
        let mut tail = light;
        for _ in 1..k {
            let (back, fwd) = b.new_edge();
            // Sub-edge {tail, back}; the new vertex holds back and fwd.
            // new_edge paired back with fwd; re-pair them with their neighbours.
            b.alpha[tail] = back;
            b.alpha[back] = tail;
            b.make_vertex(&[back, fwd]);
            path.push(fwd);
            tail = fwd;
        }
        b.alpha[tail] = dark;
        b.alpha[dark] = tail;
        paths.push(path);
    }
    Subdivision {
        hypermap: b.build_like(h),
        k,
        paths,
    }
}

/// Result of adding sea-stars inside light faces.
#[derive(Clone, Debug)]
pub struct SeaStars {
    pub hypermap: Hypermap,
    /// For each face of the input that received a sea-star, a dart of it.
    pub sea_star_of: Vec<Option<Dart>>,
    /// For each boundary dart `d` of a face that received a sea-star, the dart
    /// on the sea-star side of the sea-arc edge ending at the origin of `d`.
    pub arc_end_at_origin: Vec<Option<Dart>>,
    /// For each boundary dart `d` of such a face, the sea-star-side darts of its
    /// sea-arc, from the origin of `d` to its head.
    pub arcs: Vec<Vec<Dart>>,
}

/// Inserts a sea-star inside each face of `faces` (which must be light): every
/// boundary edge gets a companion arc of `arc_len` edges so that the light face
/// is split into faces of degree `arc_len + 1` around a central dark face.
pub fn add_sea_stars(h: &Hypermap, faces: &[usize], arc_len: usize) -> SeaStars {
    assert!(arc_len >= 1, "sea arcs need at least one edge");
    let m = h.map();
    let n = m.n_darts();
    let mut b = MapBuilder::from_map(m);
    let mut sea_star_of = vec![None; m.num_faces()];
    let mut arc_end_at_origin = vec![None; n];
    let mut arcs = vec![Vec::new(); n];
    for &f in faces {
        assert!(!h.is_dark_face(f), "sea-stars go inside light faces");
        let boundary = m.face_darts(f).to_vec();
        let len = boundary.len();
        // Per boundary dart d_j: the first arc dart a_j (origin x_j) and the last
        // arc dart's partner b_{j+1} (origin x_{j+1}).
        let mut starts = Vec::with_capacity(len);
        let mut ends = Vec::with_capacity(len);
        for &d in &boundary {
            let (a, back_first) = b.new_edge();
            let mut fwd_darts = vec![a];
            let mut last_back = back_first;
            for _ in 1..arc_len {
                let (fwd, back) = b.new_edge();
                b.make_vertex(&[last_back, fwd]);
                fwd_darts.push(fwd);
                last_back = back;
            }
            arcs[d] = fwd_darts;
            starts.push(a);
            ends.push(last_back);
        }
        for j in 0..len {
            let d = boundary[j];
            let a = starts[j];
            let bj = ends[(j + len - 1) % len];
            // Counterclockwise at x_j: d_j, a_j, b_j, then the old successor.
            b.insert_after(d, a);
            b.insert_after(a, bj);
            arc_end_at_origin[d] = Some(a);
        }
        sea_star_of[f] = Some(starts[0]);
    }
    SeaStars {
        hypermap: b.build_like(h),
        sea_star_of,
        arc_end_at_origin,
        arcs,
    }
}

/// Result of adding a dark digon along each outer edge of a dark-rooted hypermap.
#[derive(Clone, Debug)]
pub struct OuterDigons {
    /// Light-rooted at the new outer face.
    pub rooted: RootedHypermap,
    /// For each outer dart `o` of the input (in outer-face order), the added
    /// darts `(p, q)`: `p` lies on the new outer face, `q` bounds the digon.
    pub added: Vec<(Dart, Dart, Dart)>,
}

/// Adds a dark face of degree 2 along every outer edge; the new outer face is
/// light with the same degree.
pub fn add_outer_digons(r: &RootedHypermap) -> Result<OuterDigons> {
    let f0 = match r.root() {
        Root::DarkFace(f) => f,
        _ => {
            return Err(HypermapError::InvalidRoot(
                "outer digons need a dark outer face".into(),
            ))
        }
    };
    if !r.outer_face_is_simple() {
        return Err(HypermapError::OuterFaceNotSimple);
    }
    let h = r.hypermap();
    let m = h.map();
    let outer = m.face_darts(f0).to_vec();
    let mut b = MapBuilder::from_map(m);
    let mut added = Vec::with_capacity(outer.len());
    for &o in &outer {
        let l = m.alpha(o);
        let (p, q) = b.new_edge();
        // p just counterclockwise after o at origin(o).
        b.insert_after(o, p);
        // q just clockwise before l at origin(l): insert after sigma^-1(l).
        let before = b
            .sigma
            .iter()
            .position(|&x| x == l)
            .expect("l has a predecessor");
        b.insert_after(before, q);
        added.push((o, p, q));
    }
    let hm = b.build_like(h);
    let root_dart = added[0].1;
    let rooted = RootedHypermap::face_rooted(hm, root_dart);
    debug_assert!(!rooted.hypermap().is_dark_dart(root_dart));
    Ok(OuterDigons { rooted, added })
}

/// Result of adding a loop at the root vertex.
#[derive(Clone, Debug)]
pub struct RootLoop {
    /// Dark-rooted at the new degree-1 face.
    pub rooted: RootedHypermap,
    /// The loop darts: `p` bounds the new dark face, `q` lies in the enlarged
    /// light face.
    pub p: Dart,
    pub q: Dart,
}

/// Adds a loop in the corner of `corner` (a dart at the root vertex whose left
/// face is light), creating a dark face of degree 1 that becomes the root.
pub fn add_root_loop(r: &RootedHypermap, corner: Dart) -> Result<RootLoop> {
    let v0 = r
        .root_vertex()
        .ok_or_else(|| HypermapError::InvalidRoot("root loop needs a vertex root".into()))?;
    let h = r.hypermap();
    let m = h.map();
    if m.vertex(corner) != v0 || h.is_dark_dart(corner) {
        return Err(HypermapError::InvalidRoot(
            "corner must be a light corner at the root vertex".into(),
        ));
    }
    let mut b = MapBuilder::from_map(m);
    let (p, q) = b.new_edge();
    b.insert_after(corner, p);
    b.insert_after(p, q);
    let hm = b.build_like(h);
    debug_assert!(hm.is_dark_dart(p));
    let f1 = hm.map().face(p);
    let rooted = RootedHypermap::new(hm, Root::DarkFace(f1))?;
    Ok(RootLoop { rooted, p, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{cycle_hypermap, loop_hypermap};

    #[test]
    fn subdivided_loop_is_a_two_cycle() {
        let s = subdivide_edges(&loop_hypermap(), 2);
        let m = s.hypermap.map();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (2, 2, 2));
        assert!(s.hypermap.is_dark_dart(0));
        assert_eq!(m.face_degree(m.face(0)), 2);
        assert_eq!(s.paths[0].len(), 2);
        assert_eq!(s.paths[0][0], 1);
    }

    #[test]
    fn subdivision_multiplies_degrees() {
        let h = cycle_hypermap(3);
        for k in 1..5 {
            let s = subdivide_edges(&h, k);
            let m = s.hypermap.map();
            assert_eq!(m.genus(), 0);
            for f in 0..m.num_faces() {
                assert_eq!(m.face_degree(f), 3 * k);
            }
            for (e, path) in s.paths.iter().enumerate() {
                assert_eq!(path.len(), k);
                for &d in path {
                    assert!(!s.hypermap.is_dark_dart(d));
                    assert_eq!(m.face(d), m.face(h.light_dart(e)));
                }
            }
        }
    }

    #[test]
    fn sea_star_degrees() {
        let h = cycle_hypermap(2);
        let k = 4;
        let s = subdivide_edges(&h, k);
        let light = s.hypermap.light_faces().collect::<Vec<_>>();
        let st = add_sea_stars(&s.hypermap, &light, k - 1);
        let m = st.hypermap.map();
        assert_eq!(m.genus(), 0);
        let star = m.face(st.sea_star_of[light[0]].unwrap());
        assert!(st.hypermap.is_dark_face(star));
        assert_eq!(m.face_degree(star), k * (k - 1) * 2);
        for f in st.hypermap.light_faces() {
            assert_eq!(m.face_degree(f), k);
        }
    }

    #[test]
    fn outer_digons_keep_outer_degree() {
        let h = cycle_hypermap(3);
        let dark = h.dark_faces().next().unwrap();
        let r = RootedHypermap::new(h.clone(), Root::DarkFace(dark)).unwrap();
        let od = add_outer_digons(&r).unwrap();
        let m = od.rooted.map();
        let f0 = od.rooted.root_face().unwrap();
        assert_eq!(m.face_degree(f0), 3);
        assert!(!od.rooted.hypermap().is_dark_face(f0));
        let digons = od
            .rooted
            .hypermap()
            .dark_faces()
            .filter(|&f| m.face_degree(f) == 2)
            .count();
        assert_eq!(digons, 3);
        for &(o, _, q) in &od.added {
            assert_eq!(m.face(o), m.face(q));
        }
    }

    #[test]
    fn root_loop_creates_degree_one_dark_face() {
        let h = cycle_hypermap(2);
        let r = RootedHypermap::new(h.clone(), Root::Vertex(0)).unwrap();
        let corner = h
            .map()
            .vertex_darts(0)
            .iter()
            .copied()
            .find(|&d| !h.is_dark_dart(d))
            .unwrap();
        let rl = add_root_loop(&r, corner).unwrap();
        let m = rl.rooted.map();
        assert_eq!(m.face_degree(m.face(rl.p)), 1);
        assert_eq!(m.face_degree(m.face(rl.q)), 3);
    }
}
