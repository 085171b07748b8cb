//! Dart-based combinatorial maps and planar hypermaps.
//!
//! A map on `n` darts is given by two permutations: `alpha`, the fixed-point-free
//! edge involution, and `sigma`, the counterclockwise rotation of darts around
//! their origin vertex. The face on the left of a dart `d` is traced by
//! `next(d) = sigma^-1(alpha(d))`, so the boundary of every face is walked
//! counterclockwise with the face on the left. The corner of `d` is the corner
//! at the origin of `d`, inside `face(d)`, between `d` and `sigma(d)`.

use crate::error::{HypermapError, Result};

pub type Dart = usize;

/// A connected combinatorial map with cached vertex, edge and face orbits.
///
/// Orbits are numbered by increasing minimal dart, so "face identified by its
/// minimal dart" and face index order agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMap {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    vertex_of: Vec<usize>,
    vertices: Vec<Vec<Dart>>,
    edge_of: Vec<usize>,
    edges: Vec<[Dart; 2]>,
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
}

fn check_permutation(name: &str, perm: &[Dart], n: usize) -> Result<Vec<Dart>> {
    if perm.len() != n {
        return Err(HypermapError::NotPermutation(format!(
            "{name} has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut inv = vec![usize::MAX; n];
    for (i, &p) in perm.iter().enumerate() {
        if p >= n || inv[p] != usize::MAX {
            return Err(HypermapError::NotPermutation(format!(
                "{name} maps {i} to {p}, which is out of range or repeated"
            )));
        }
        inv[p] = i;
    }
    Ok(inv)
}

/// Splits the darts into orbits of `step`, each orbit listed from its minimal
/// dart in `step` order. Returns (orbit id per dart, orbits).
fn orbits(n: usize, step: impl Fn(Dart) -> Dart) -> (Vec<usize>, Vec<Vec<Dart>>) {
    let mut id = vec![usize::MAX; n];
    let mut list = Vec::new();
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let k = list.len();
        let mut orbit = Vec::new();
        let mut d = start;
        loop {
            id[d] = k;
            orbit.push(d);
            d = step(d);
            if d == start {
                break;
            }
        }
        list.push(orbit);
    }
    (id, list)
}

impl CombinatorialMap {
    /// Builds and validates a map from its edge involution and rotation.
    pub fn new(alpha: Vec<Dart>, sigma: Vec<Dart>) -> Result<Self> {
        let n = alpha.len();
        check_permutation("alpha", &alpha, n)?;
        let sigma_inv = check_permutation("sigma", &sigma, n)?;
        if n == 0 {
            return Err(HypermapError::NotPermutation(
                "a map needs at least one edge".into(),
            ));
        }
        for d in 0..n {
            if alpha[d] == d {
                return Err(HypermapError::HasFixedPoint(d));
            }
            if alpha[alpha[d]] != d {
                return Err(HypermapError::NotInvolution(d));
            }
        }
        // Connectivity of the group generated by alpha and sigma.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for nb in [alpha[d], sigma[d], sigma_inv[d]] {
                if !seen[nb] {
                    seen[nb] = true;
                    count += 1;
                    stack.push(nb);
                }
            }
        }
        if count != n {
            return Err(HypermapError::NotConnected);
        }
        let (vertex_of, vertices) = orbits(n, |d| sigma[d]);
        let (edge_of, edge_orbits) = orbits(n, |d| alpha[d]);
        let edges = edge_orbits.into_iter().map(|o| [o[0], o[1]]).collect();
        let (face_of, faces) = orbits(n, |d| sigma_inv[alpha[d]]);
        Ok(CombinatorialMap {
            alpha,
            sigma,
            sigma_inv,
            vertex_of,
            vertices,
            edge_of,
            edges,
            face_of,
            faces,
        })
    }

    pub fn n_darts(&self) -> usize {
        self.alpha.len()
    }
    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }
    /// Successor of `d` along the boundary of the face on its left.
    pub fn next(&self, d: Dart) -> Dart {
        self.sigma_inv[self.alpha[d]]
    }
    /// Predecessor of `d` along the boundary of the face on its left.
    pub fn prev(&self, d: Dart) -> Dart {
        self.alpha[self.sigma[d]]
    }
    pub fn alpha_perm(&self) -> &[Dart] {
        &self.alpha
    }
    pub fn sigma_perm(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }
    pub fn edge(&self, d: Dart) -> usize {
        self.edge_of[d]
    }
    pub fn face(&self, d: Dart) -> usize {
        self.face_of[d]
    }
    /// Vertex at the far end of `d`.
    pub fn head(&self, d: Dart) -> usize {
        self.vertex_of[self.alpha[d]]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }
    /// Darts leaving vertex `v`, in counterclockwise order from the minimal one.
    pub fn vertex_darts(&self, v: usize) -> &[Dart] {
        &self.vertices[v]
    }
    /// Darts with face `f` on their left, in boundary order from the minimal one.
    pub fn face_darts(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }
    pub fn edge_darts(&self, e: usize) -> [Dart; 2] {
        self.edges[e]
    }
    pub fn face_degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }
    pub fn vertex_degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Genus from the Euler formula.
    pub fn genus(&self) -> usize {
        let chi = self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64;
        ((2 - chi) / 2) as usize
    }
}

/// Face color in a hypermap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Dark,
    Light,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Dark => Color::Light,
            Color::Light => Color::Dark,
        }
    }
}

/// A planar map with a proper dark/light face coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermap {
    map: CombinatorialMap,
    dark: Vec<bool>,
}

/// Colors the faces of a planar map so that every edge separates a dark face
/// from a light face, with the face of dart 0 dark.
pub fn bicolor(map: CombinatorialMap) -> Result<Hypermap> {
    let genus = map.genus();
    if genus != 0 {
        return Err(HypermapError::NotPlanar(genus));
    }
    let nf = map.num_faces();
    let mut color: Vec<Option<bool>> = vec![None; nf];
    color[map.face(0)] = Some(true);
    let mut stack = vec![map.face(0)];
    while let Some(f) = stack.pop() {
        let c = color[f].unwrap();
        for &d in map.face_darts(f) {
            let g = map.face(map.alpha(d));
            match color[g] {
                None => {
                    color[g] = Some(!c);
                    stack.push(g);
                }
                Some(cg) if cg == c => return Err(HypermapError::NotEulerian),
                Some(_) => {}
            }
        }
    }
    let dark = color
        .into_iter()
        .map(|c| c.expect("faces of a connected map are reachable"))
        .collect();
    Ok(Hypermap { map, dark })
}

impl Hypermap {
    /// Builds a hypermap from permutations, using the dart-0-is-dark gauge.
    pub fn from_permutations(alpha: Vec<Dart>, sigma: Vec<Dart>) -> Result<Self> {
        bicolor(CombinatorialMap::new(alpha, sigma)?)
    }

    /// Builds a hypermap with an explicit coloring, which must be proper.
    pub fn with_colors(map: CombinatorialMap, dark: Vec<bool>) -> Result<Self> {
        if map.genus() != 0 {
            return Err(HypermapError::NotPlanar(map.genus()));
        }
        if dark.len() != map.num_faces() {
            return Err(HypermapError::NotEulerian);
        }
        for d in 0..map.n_darts() {
            if dark[map.face(d)] == dark[map.face(map.alpha(d))] {
                return Err(HypermapError::NotEulerian);
            }
        }
        Ok(Hypermap { map, dark })
    }

    /// The same map with dark and light exchanged.
    pub fn swap_colors(&self) -> Hypermap {
        Hypermap {
            map: self.map.clone(),
            dark: self.dark.iter().map(|b| !b).collect(),
        }
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }
    pub fn face_color(&self, f: usize) -> Color {
        if self.dark[f] {
            Color::Dark
        } else {
            Color::Light
        }
    }
    pub fn is_dark_face(&self, f: usize) -> bool {
        self.dark[f]
    }
    /// Whether the face on the left of `d` is dark.
    pub fn is_dark_dart(&self, d: Dart) -> bool {
        self.dark[self.map.face(d)]
    }
    /// The dart of edge `e` whose left face is dark.
    pub fn dark_dart(&self, e: usize) -> Dart {
        let [a, b] = self.map.edge_darts(e);
        if self.is_dark_dart(a) {
            a
        } else {
            b
        }
    }
    /// The dart of edge `e` whose left face is light; it is the only legal tail
    /// of `e` when the edge is oriented.
    pub fn light_dart(&self, e: usize) -> Dart {
        self.map.alpha(self.dark_dart(e))
    }
    pub fn dark_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.map.num_faces()).filter(|&f| self.dark[f])
    }
    pub fn light_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.map.num_faces()).filter(|&f| !self.dark[f])
    }
    /// Unrooted isomorphism key, colors included.
    pub fn canonical_form(&self) -> CanonicalKey {
        let all: Vec<Dart> = (0..self.map.n_darts()).collect();
        canonical_key(&self.map, &all, 0, |d| self.is_dark_dart(d) as u64)
    }
    pub fn dark_flags(&self) -> &[bool] {
        &self.dark
    }
}

/// Root designation of a hypermap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    DarkFace(usize),
    LightFace(usize),
    Vertex(usize),
    Corner(Dart),
}

/// Which of the three families of rooted hyperorientations a root selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    Dark,
    Light,
    Vertex,
}

/// A hypermap with a root face, root vertex or root corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedHypermap {
    hypermap: Hypermap,
    root: Root,
}

impl RootedHypermap {
    pub fn new(hypermap: Hypermap, root: Root) -> Result<Self> {
        let m = hypermap.map();
        match root {
            Root::DarkFace(f) | Root::LightFace(f) => {
                if f >= m.num_faces() {
                    return Err(HypermapError::InvalidRoot(format!("face {f} out of range")));
                }
                let want_dark = matches!(root, Root::DarkFace(_));
                if hypermap.is_dark_face(f) != want_dark {
                    return Err(HypermapError::InvalidRoot(format!(
                        "face {f} has the wrong color"
                    )));
                }
            }
            Root::Vertex(v) => {
                if v >= m.num_vertices() {
                    return Err(HypermapError::InvalidRoot(format!(
                        "vertex {v} out of range"
                    )));
                }
            }
            Root::Corner(d) => {
                if d >= m.n_darts() {
                    return Err(HypermapError::InvalidRoot(format!("dart {d} out of range")));
                }
            }
        }
        Ok(RootedHypermap { hypermap, root })
    }

    /// Roots at the face on the left of `d`.
    pub fn face_rooted(hypermap: Hypermap, d: Dart) -> Self {
        let f = hypermap.map().face(d);
        let root = if hypermap.is_dark_face(f) {
            Root::DarkFace(f)
        } else {
            Root::LightFace(f)
        };
        RootedHypermap { hypermap, root }
    }

    pub fn hypermap(&self) -> &Hypermap {
        &self.hypermap
    }
    pub fn map(&self) -> &CombinatorialMap {
        self.hypermap.map()
    }
    pub fn root(&self) -> Root {
        self.root
    }
    pub fn kind(&self) -> RootKind {
        match self.root {
            Root::DarkFace(_) => RootKind::Dark,
            Root::LightFace(_) => RootKind::Light,
            Root::Vertex(_) => RootKind::Vertex,
            Root::Corner(d) => {
                if self.hypermap.is_dark_dart(d) {
                    RootKind::Dark
                } else {
                    RootKind::Light
                }
            }
        }
    }
    /// The outer (root) face, if the root is a face or a corner.
    pub fn root_face(&self) -> Option<usize> {
        match self.root {
            Root::DarkFace(f) | Root::LightFace(f) => Some(f),
            Root::Corner(d) => Some(self.map().face(d)),
            Root::Vertex(_) => None,
        }
    }
    pub fn root_vertex(&self) -> Option<usize> {
        match self.root {
            Root::Vertex(v) => Some(v),
            _ => None,
        }
    }
    /// Forgets the corner, keeping its face as the root.
    pub fn to_face_rooted(&self) -> RootedHypermap {
        match self.root {
            Root::Corner(d) => RootedHypermap::face_rooted(self.hypermap.clone(), d),
            _ => self.clone(),
        }
    }
    /// Darts of the outer face (empty for a vertex root).
    pub fn outer_darts(&self) -> Vec<Dart> {
        self.root_face()
            .map(|f| self.map().face_darts(f).to_vec())
            .unwrap_or_default()
    }
    /// Vertices incident to the outer face.
    pub fn outer_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .outer_darts()
            .iter()
            .map(|&d| self.map().vertex(d))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
    /// Edges incident to the outer face.
    pub fn outer_edges(&self) -> Vec<usize> {
        let mut es: Vec<usize> = self
            .outer_darts()
            .iter()
            .map(|&d| self.map().edge(d))
            .collect();
        es.sort_unstable();
        es.dedup();
        es
    }
    /// Whether the outer face visits each of its vertices once.
    pub fn outer_face_is_simple(&self) -> bool {
        let darts = self.outer_darts();
        self.outer_vertices().len() == darts.len()
    }

    /// Darts from which a breadth-first relabeling may start so that the
    /// relabeled map carries the same root.
    pub fn root_candidates(&self) -> Vec<Dart> {
        match self.root {
            Root::Corner(d) => vec![d],
            Root::DarkFace(f) | Root::LightFace(f) => self.map().face_darts(f).to_vec(),
            Root::Vertex(v) => self.map().vertex_darts(v).to_vec(),
        }
    }

    /// Isomorphism key: equal keys iff the rooted hypermaps are isomorphic.
    pub fn canonical_form(&self) -> CanonicalKey {
        self.canonical_form_with(|_| 0)
    }

    /// Isomorphism key including a per-dart decoration (for example orientation
    /// data), so decorated rooted hypermaps can be compared.
    pub fn canonical_form_with(&self, decoration: impl Fn(Dart) -> u64) -> CanonicalKey {
        let tag = match self.root {
            Root::DarkFace(_) => 1,
            Root::LightFace(_) => 2,
            Root::Vertex(_) => 3,
            Root::Corner(_) => 4,
        };
        let hm = &self.hypermap;
        let decorate = |d: Dart| (decoration(d) << 1) | hm.is_dark_dart(d) as u64;
        canonical_key(self.map(), &self.root_candidates(), tag, decorate)
    }
}

/// Sortable isomorphism key of a rooted, possibly decorated, map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u64>);

/// Relabels darts breadth-first from `root` (following alpha then sigma) and
/// returns the new-to-old order.
pub fn bfs_order(map: &CombinatorialMap, root: Dart) -> Vec<Dart> {
    let n = map.n_darts();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[root] = 0;
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        for nb in [map.alpha(d), map.sigma(d)] {
            if label[nb] == usize::MAX {
                label[nb] = order.len();
                order.push(nb);
            }
        }
        i += 1;
    }
    order
}

fn canonical_key(
    map: &CombinatorialMap,
    candidates: &[Dart],
    tag: u64,
    decorate: impl Fn(Dart) -> u64,
) -> CanonicalKey {
    let n = map.n_darts();
    let mut best: Option<Vec<u64>> = None;
    let mut label = vec![0usize; n];
    for &r in candidates {
        let order = bfs_order(map, r);
        for (i, &d) in order.iter().enumerate() {
            label[d] = i;
        }
        let mut key = Vec::with_capacity(3 * n + 2);
        key.push(tag);
        key.push(n as u64);
        for &d in &order {
            key.push(label[map.alpha(d)] as u64);
            key.push(label[map.sigma(d)] as u64);
            key.push(decorate(d));
        }
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    CanonicalKey(best.expect("at least one root candidate"))
}

/// Relabels the darts of a map by a permutation `new_of_old`.
pub fn relabel(map: &CombinatorialMap, new_of_old: &[Dart]) -> Result<CombinatorialMap> {
    let n = map.n_darts();
    let mut alpha = vec![0; n];
    let mut sigma = vec![0; n];
    for d in 0..n {
        alpha[new_of_old[d]] = new_of_old[map.alpha(d)];
        sigma[new_of_old[d]] = new_of_old[map.sigma(d)];
    }
    CombinatorialMap::new(alpha, sigma)
}

/// The hypermap made of one loop edge: one vertex, a dark and a light face of
/// degree 1.
pub fn loop_hypermap() -> Hypermap {
    Hypermap::from_permutations(vec![1, 0], vec![1, 0]).expect("loop is a valid hypermap")
}

/// A cycle of `n` edges: a dark and a light face of degree `n`.
pub fn cycle_hypermap(n: usize) -> Hypermap {
    // Dart 2i goes from vertex i to i+1, dart 2i+1 goes back.
    let mut alpha = vec![0; 2 * n];
    let mut sigma = vec![0; 2 * n];
    for i in 0..n {
        alpha[2 * i] = 2 * i + 1;
        alpha[2 * i + 1] = 2 * i;
        // At vertex i+1 the darts are 2(i+1) (forward) and 2i+1 (backward).
        let fwd = 2 * ((i + 1) % n);
        let back = 2 * i + 1;
        sigma[fwd] = back;
        sigma[back] = fwd;
    }
    Hypermap::from_permutations(alpha, sigma).expect("cycle is a valid hypermap")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_map_counts() {
        let m = CombinatorialMap::new(vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (1, 1, 2));
        assert_eq!(m.genus(), 0);
    }

    #[test]
    fn link_edge_counts_and_is_not_eulerian() {
        let m = CombinatorialMap::new(vec![1, 0], vec![0, 1]).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (2, 1, 1));
        assert_eq!(bicolor(m), Err(HypermapError::NotEulerian));
    }

    #[test]
    fn fixed_point_and_non_involution_are_rejected() {
        assert_eq!(
            CombinatorialMap::new(vec![0, 1], vec![0, 1]),
            Err(HypermapError::HasFixedPoint(0))
        );
        assert_eq!(
            CombinatorialMap::new(vec![1, 2, 3, 0], vec![0, 1, 2, 3]),
            Err(HypermapError::NotInvolution(0))
        );
    }

    #[test]
    fn disconnected_map_is_rejected() {
        assert_eq!(
            CombinatorialMap::new(vec![1, 0, 3, 2], vec![1, 0, 3, 2]),
            Err(HypermapError::NotConnected)
        );
    }

    #[test]
    fn torus_genus() {
        let m = CombinatorialMap::new(vec![1, 0, 3, 2], vec![2, 3, 1, 0]).unwrap();
        assert_eq!(m.genus(), 1);
        assert!(matches!(bicolor(m), Err(HypermapError::NotPlanar(1))));
    }

    #[test]
    fn loop_bicoloring() {
        let h = loop_hypermap();
        assert!(h.is_dark_face(h.map().face(0)));
        assert!(!h.is_dark_face(h.map().face(1)));
    }

    #[test]
    fn cycle_has_two_faces_of_full_degree() {
        for n in 1..6 {
            let h = cycle_hypermap(n);
            let m = h.map();
            assert_eq!(m.num_faces(), 2);
            assert_eq!(m.num_vertices(), n);
            assert_eq!(m.face_degree(0), n);
        }
    }

    #[test]
    fn face_is_on_the_left() {
        // In the 2-cycle, the dart leaving vertex 0 toward vertex 1 and the one
        // leaving vertex 1 toward vertex 0 bound the same face.
        let h = cycle_hypermap(2);
        let m = h.map();
        assert_eq!(m.face(0), m.face(2));
        assert_eq!(m.next(0), 2);
        assert_eq!(m.prev(2), 0);
    }

    #[test]
    fn relabelled_loop_keys_agree_and_differ_from_two_cycle() {
        let a = RootedHypermap::face_rooted(loop_hypermap(), 0);
        let swapped = relabel(a.map(), &[1, 0]).unwrap();
        let b = RootedHypermap::face_rooted(bicolor(swapped).unwrap(), 0);
        assert_eq!(a.canonical_form(), b.canonical_form());
        let c = RootedHypermap::face_rooted(cycle_hypermap(2), 0);
        assert_ne!(a.canonical_form(), c.canonical_form());
    }
}
