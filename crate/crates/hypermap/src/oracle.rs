//! Brute-force ground truth: exhaustive generation of small hypermaps,
//! rootings, hyperorientations and hypermobiles.
//!
//! Hypermaps are generated independently of the bijections: a hypermap with
//! `m` edges has `m` dark and `m` light darts, its dark faces form a
//! permutation of the dark darts, its light faces a permutation of the light
//! darts, and its edges a bijection between the two sets. Up to relabeling the
//! two face permutations are determined by their cycle types, so iterating over
//! pairs of partitions of `m` and all bijections covers every hypermap.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::charge::{AnnularHypermap, Charge};
use crate::map::{CanonicalKey, CombinatorialMap, Dart, Hypermap, Root, RootKind, RootedHypermap};
use crate::mobile::{Hypermobile, MobileEdge, NodeKind, Profile, Slot};
use crate::orientation::{classify, weight_report, Class, EdgeStatus, Engine, Hyperorientation};
use crate::Rational;

/// Parameters of an enumeration of rooted hypermaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub max_edges: usize,
    /// Root kinds to produce; corner roots are produced when `corners` is set.
    pub kinds: Vec<RootKind>,
    pub corners: bool,
}

impl EnumerationSpec {
    pub fn face_and_vertex_rooted(max_edges: usize) -> Self {
        EnumerationSpec {
            max_edges,
            kinds: vec![RootKind::Light, RootKind::Dark, RootKind::Vertex],
            corners: false,
        }
    }
    pub fn corner_rooted(max_edges: usize) -> Self {
        EnumerationSpec {
            max_edges,
            kinds: Vec::new(),
            corners: true,
        }
    }
}

/// Default cap on the number of edges of exhaustive enumerations.
pub const DEFAULT_EDGE_CAP: usize = 6;

/// All partitions of `n` into positive parts, in nonincreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A permutation of `0..n` whose cycles are consecutive blocks of the given sizes.
pub(crate) fn block_permutation(parts: &[usize]) -> Vec<usize> {
    let mut perm = Vec::new();
    let mut start = 0;
    for &p in parts {
        for i in 0..p {
            perm.push(start + (i + 1) % p);
        }
        start += p;
    }
    perm
}

/// Visits every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Builds the hypermap whose dark darts are `0..m` with face permutation
/// `dark_next`, light darts `m..2m` with face permutation `light_next`, and
/// edges joining dark dart `i` to light dart `m + matching[i]`.
pub(crate) fn glue(
    dark_next: &[usize],
    light_next: &[usize],
    matching: &[usize],
) -> Option<Hypermap> {
    let m = dark_next.len();
    let n = 2 * m;
    let mut alpha = vec![0; n];
    let mut next = vec![0; n];
    for i in 0..m {
        alpha[i] = m + matching[i];
        alpha[m + matching[i]] = i;
        next[i] = dark_next[i];
        next[m + i] = m + light_next[i];
    }
    // next = sigma^-1 . alpha, so sigma = (next . alpha)^-1.
    let mut sigma = vec![0; n];
    for d in 0..n {
        sigma[next[alpha[d]]] = d;
    }
    let map = CombinatorialMap::new(alpha, sigma).ok()?;
    if map.genus() != 0 {
        return None;
    }
    let mut dark = vec![false; map.num_faces()];
    for d in 0..m {
        dark[map.face(d)] = true;
    }
    Hypermap::with_colors(map, dark).ok()
}

/// All planar hypermaps with exactly `edges` edges, each once up to
/// color-preserving isomorphism, sorted by canonical key.
pub fn enumerate_hypermaps(edges: usize) -> Vec<Hypermap> {
    enumerate_hypermaps_with(edges, |_| true, |_| true)
}

/// Planar hypermaps with exactly `edges` edges whose dark and light face
/// degree multisets (as partitions in decreasing order) pass the filters.
pub fn enumerate_hypermaps_with(
    edges: usize,
    dark_filter: impl Fn(&[usize]) -> bool,
    light_filter: impl Fn(&[usize]) -> bool,
) -> Vec<Hypermap> {
    let parts = partitions(edges);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for dark_parts in parts.iter().filter(|p| dark_filter(p)) {
        let dark_next = block_permutation(dark_parts);
        for light_parts in parts.iter().filter(|p| light_filter(p)) {
            let light_next = block_permutation(light_parts);
            for_each_permutation(edges, |matching| {
                if let Some(h) = glue(&dark_next, &light_next, matching) {
                    let key = h.canonical_form();
                    if seen.insert(key.clone()) {
                        out.push((key, h));
                    }
                }
            });
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, h)| h).collect()
}

/// Planar maps with `edges` edges, as hypermaps whose dark faces are digons
/// standing for the map edges.
pub fn enumerate_maps(edges: usize) -> Vec<Hypermap> {
    enumerate_hypermaps_with(2 * edges, |p| p.iter().all(|&x| x == 2), |_| true)
}

/// Planar `p`-constellations with `edges` edges: dark faces of degree `p` and
/// light faces of degree a multiple of `p`.
pub fn enumerate_constellations(p: usize, edges: usize) -> Vec<Hypermap> {
    enumerate_hypermaps_with(
        edges,
        |d| d.iter().all(|&x| x == p),
        |l| l.iter().all(|&x| x % p == 0),
    )
}

/// All integer-weighted hyperorientations of `r` that are weighted according
/// to the integer charge `charge`, each with its class.
///
/// Every edge weight of such an orientation is bounded: a 1-way weight is
/// part of the weight of the vertex it enters, hence at most that vertex's
/// target, and a 0-way weight is part of its light face's nonpositive target,
/// hence at least that target. The search is therefore complete for integer
/// solutions.
pub fn enumerate_sigma_weighted_orientations(
    r: &RootedHypermap,
    charge: &Charge,
) -> Vec<(Hyperorientation, Class)> {
    assert!(
        charge.is_integral(),
        "the brute-force search needs integer charges"
    );
    let h = r.hypermap();
    let m = h.map();
    let to_int = |x: Rational| *x.numer();
    let dark_root = (r.kind() == RootKind::Dark).then(|| r.root_face().expect("face root"));
    let mut vertex_target: Vec<i128> = charge.vertex.iter().map(|&c| to_int(c)).collect();
    let mut fixed: Vec<Option<i128>> = vec![None; m.num_edges()];
    if dark_root.is_some() {
        for v in r.outer_vertices() {
            vertex_target[v] += 1;
        }
        for e in r.outer_edges() {
            fixed[e] = Some(1);
        }
    }
    let face_target: Vec<i128> = (0..m.num_faces())
        .map(|f| {
            let (c, deg) = (to_int(charge.face[f]), m.face_degree(f) as i128);
            if Some(f) == dark_root {
                -c
            } else if h.is_dark_face(f) {
                -c - deg
            } else {
                c - deg
            }
        })
        .collect();
    // Edges grouped by dark face, so that the last edge of each dark face is
    // determined by the others.
    let order: Vec<usize> = h
        .dark_faces()
        .flat_map(|f| m.face_darts(f).iter().map(|&d| m.edge(d)))
        .collect();
    let mut last_of_face = vec![false; m.num_edges()];
    for f in h.dark_faces() {
        last_of_face[m.edge(*m.face_darts(f).last().expect("nonempty face"))] = true;
    }
    let head: Vec<usize> = (0..m.num_edges())
        .map(|e| m.head(h.light_dart(e)))
        .collect();
    let light: Vec<usize> = (0..m.num_edges())
        .map(|e| m.face(h.light_dart(e)))
        .collect();
    let dark: Vec<usize> = (0..m.num_edges()).map(|e| m.face(h.dark_dart(e))).collect();

    struct Search<'a> {
        order: &'a [usize],
        fixed: &'a [Option<i128>],
        last_of_face: &'a [bool],
        head: &'a [usize],
        light: &'a [usize],
        dark: &'a [usize],
        vertex_target: &'a [i128],
        face_target: &'a [i128],
        vertex_sum: Vec<i128>,
        face_sum: Vec<i128>,
        weight: Vec<i128>,
        found: Vec<Vec<i128>>,
    }
    impl Search<'_> {
        fn range(&self, e: usize) -> (i128, i128) {
            if let Some(w) = self.fixed[e] {
                return (w, w);
            }
            if self.last_of_face[e] {
                let w = self.face_target[self.dark[e]] - self.face_sum[self.dark[e]];
                return (w, w);
            }
            let lo = self.face_target[self.light[e]].min(0);
            let hi = self.vertex_target[self.head[e]].max(0);
            (lo, hi)
        }
        fn go(&mut self, i: usize) {
            if i == self.order.len() {
                if self.vertex_sum == self.vertex_target
                    && self
                        .face_sum
                        .iter()
                        .zip(self.face_target)
                        .all(|(s, t)| s == t)
                {
                    self.found.push(self.weight.clone());
                }
                return;
            }
            let e = self.order[i];
            let (lo, hi) = self.range(e);
            for w in lo..=hi {
                let (v, l, d) = (self.head[e], self.light[e], self.dark[e]);
                if w > 0 {
                    if self.vertex_sum[v] + w > self.vertex_target[v] {
                        break;
                    }
                    self.vertex_sum[v] += w;
                } else {
                    if self.face_sum[l] + w < self.face_target[l] {
                        continue;
                    }
                    self.face_sum[l] += w;
                }
                self.face_sum[d] += w;
                self.weight[e] = w;
                self.go(i + 1);
                self.face_sum[d] -= w;
                if w > 0 {
                    self.vertex_sum[v] -= w;
                } else {
                    self.face_sum[l] -= w;
                }
            }
        }
    }
    // Light face sums only collect 0-way weights, dark face sums collect all.
    let mut search = Search {
        order: &order,
        fixed: &fixed,
        last_of_face: &last_of_face,
        head: &head,
        light: &light,
        dark: &dark,
        vertex_target: &vertex_target,
        face_target: &face_target,
        vertex_sum: vec![0; m.num_vertices()],
        face_sum: vec![0; m.num_faces()],
        weight: vec![0; m.num_edges()],
        found: Vec::new(),
    };
    search.go(0);
    search
        .found
        .into_iter()
        .map(|w| {
            let flags: Vec<bool> = w.iter().map(|&x| x > 0).collect();
            let o = Hyperorientation::from_flags(
                h,
                &flags,
                w.into_iter().map(Rational::from).collect(),
            );
            let class = classify(r, &o, Engine::DualReachability);
            (o, class)
        })
        .collect()
}

/// All hypermaps with between 1 and `max_edges` edges.
pub fn enumerate_hypermaps_up_to(max_edges: usize) -> Vec<Hypermap> {
    (1..=max_edges).flat_map(enumerate_hypermaps).collect()
}

/// All distinct rootings of `h` of the requested kinds.
pub fn rootings(h: &Hypermap, kinds: &[RootKind], corners: bool) -> Vec<RootedHypermap> {
    let m = h.map();
    let mut candidates = Vec::new();
    for &kind in kinds {
        match kind {
            RootKind::Dark => candidates.extend(h.dark_faces().map(Root::DarkFace)),
            RootKind::Light => candidates.extend(h.light_faces().map(Root::LightFace)),
            RootKind::Vertex => candidates.extend((0..m.num_vertices()).map(Root::Vertex)),
        }
    }
    if corners {
        candidates.extend((0..m.n_darts()).map(Root::Corner));
    }
    let mut seen = BTreeSet::new();
    candidates
        .into_iter()
        .map(|root| RootedHypermap::new(h.clone(), root).expect("root in range"))
        .filter(|r| seen.insert(r.canonical_form()))
        .collect()
}

/// All rooted hypermaps selected by `spec`, each once up to rooted isomorphism.
pub fn enumerate_rooted_hypermaps(spec: &EnumerationSpec) -> Vec<RootedHypermap> {
    enumerate_hypermaps_up_to(spec.max_edges)
        .iter()
        .flat_map(|h| rootings(h, &spec.kinds, spec.corners))
        .collect()
}

/// All `2^|E|` hyperorientations of `h` (each edge 0-way or 1-way with its
/// only legal tail), with weights given per edge.
pub fn all_orientations(h: &Hypermap, weight: impl Fn(usize) -> Rational) -> Vec<Hyperorientation> {
    let m = h.map().num_edges();
    let weights: Vec<Rational> = (0..m).map(&weight).collect();
    (0u64..1 << m)
        .map(|mask| {
            let flags: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
            Hyperorientation::from_flags(h, &flags, weights.clone())
        })
        .collect()
}

/// Per-edge weights that differ from edge to edge, used to check that
/// bijections carry weights along.
pub fn distinct_weight(e: usize) -> Rational {
    Rational::new(2 * e as i128 + 3, 2) * if e % 2 == 0 { 1 } else { -1 }
}

/// Key of an oriented rooted hypermap with all weights.
pub fn orientation_key(r: &RootedHypermap, o: &Hyperorientation) -> CanonicalKey {
    let deco = crate::bijection::orientation_decoration(r, o, |_| true);
    r.canonical_form_with(|d| deco[d])
}

/// Unweighted shape of a hypermobile used during generation.
#[derive(Clone, Debug)]
struct Shape {
    kind: NodeKind,
    /// Children after the parent edge, `None` for a bud.
    children: Vec<Option<Shape>>,
}

fn child_kinds(parent: NodeKind) -> &'static [NodeKind] {
    match parent {
        NodeKind::DarkSquare => &[NodeKind::Round, NodeKind::LightSquare],
        _ => &[NodeKind::DarkSquare],
    }
}

/// All shapes rooted at a node of kind `kind` using exactly `size` edges and buds
/// below it.
fn shapes(kind: NodeKind, size: usize) -> Vec<Shape> {
    sequences(kind, size)
        .into_iter()
        .map(|children| Shape { kind, children })
        .collect()
}

fn sequences(parent: NodeKind, size: usize) -> Vec<Vec<Option<Shape>>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    if parent == NodeKind::LightSquare {
        for rest in sequences(parent, size - 1) {
            let mut seq = vec![None];
            seq.extend(rest);
            out.push(seq);
        }
    }
    for &kind in child_kinds(parent) {
        for child_size in 0..size {
            for child in shapes(kind, child_size) {
                for rest in sequences(parent, size - 1 - child_size) {
                    let mut seq = vec![Some(child.clone())];
                    seq.extend(rest);
                    out.push(seq);
                }
            }
        }
    }
    out
}

fn build_mobile(shape: &Shape) -> Hypermobile {
    fn rec(
        s: &Shape,
        parent_edge: Option<usize>,
        kinds: &mut Vec<NodeKind>,
        rot: &mut Vec<Vec<Slot>>,
        edges: &mut Vec<MobileEdge>,
    ) {
        let v = kinds.len();
        kinds.push(s.kind);
        rot.push(parent_edge.map(Slot::Edge).into_iter().collect());
        if let Some(e) = parent_edge {
            edges[e].ends[1] = v;
        }
        for c in &s.children {
            match c {
                None => rot[v].push(Slot::Bud),
                Some(child) => {
                    let e = edges.len();
                    edges.push(MobileEdge {
                        ends: [v, usize::MAX],
                        weight: Rational::from(0),
                    });
                    rot[v].push(Slot::Edge(e));
                    rec(child, Some(e), kinds, rot, edges);
                }
            }
        }
    }
    let (mut kinds, mut rot, mut edges) = (Vec::new(), Vec::new(), Vec::new());
    rec(shape, None, &mut kinds, &mut rot, &mut edges);
    Hypermobile::new(kinds, rot, edges).expect("generated shapes are hypermobiles")
}

/// All unweighted hypermobiles (weights 0) with exactly `size` edges plus buds,
/// each once up to plane-tree isomorphism.
pub fn enumerate_mobile_shapes(size: usize) -> Vec<Hypermobile> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for kind in [NodeKind::Round, NodeKind::DarkSquare, NodeKind::LightSquare] {
        for s in shapes(kind, size) {
            let t = build_mobile(&s);
            if seen.insert(t.canonical_form()) {
                out.push(t);
            }
        }
    }
    out
}

/// Replaces the edge weights of `t`.
pub fn with_weights(t: &Hypermobile, weight: impl Fn(usize) -> Rational) -> Hypermobile {
    let edges = t
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| MobileEdge {
            ends: e.ends,
            weight: weight(i),
        })
        .collect();
    Hypermobile::new(
        t.kinds().to_vec(),
        (0..t.num_nodes()).map(|v| t.rotation(v).to_vec()).collect(),
        edges,
    )
    .expect("same shape")
}

/// The unique edge weighting of the tree `t` giving every node the target
/// weight, if the targets are consistent.
pub fn solve_tree_weights(
    t: &Hypermobile,
    target: impl Fn(usize) -> Rational,
) -> Option<Hypermobile> {
    let n = t.num_nodes();
    let mut remaining: Vec<Rational> = (0..n).map(&target).collect();
    let mut degree: Vec<usize> = (0..n)
        .map(|v| {
            t.rotation(v)
                .iter()
                .filter(|s| matches!(s, Slot::Edge(_)))
                .count()
        })
        .collect();
    let mut weight = vec![None; t.num_edges()];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = leaves.pop() {
        if degree[v] != 1 {
            continue;
        }
        let e = t
            .rotation(v)
            .iter()
            .find_map(|s| match *s {
                Slot::Edge(e) if weight[e].is_none() => Some(e),
                _ => None,
            })
            .expect("a leaf keeps one open edge");
        let w = remaining[v];
        weight[e] = Some(w);
        degree[v] = 0;
        let u = t.other_end(e, v);
        remaining[v] = Rational::from(0);
        remaining[u] -= w;
        degree[u] -= 1;
        if degree[u] == 1 {
            leaves.push(u);
        }
    }
    if remaining.iter().any(|r| *r != Rational::from(0)) {
        return None;
    }
    Some(with_weights(t, |e| weight[e].expect("every edge solved")))
}

/// Node weight targets of a profile that fixes them, or `None` for profiles
/// with free weights.
pub fn profile_targets(t: &Hypermobile, profile: &Profile) -> Option<Vec<Rational>> {
    let deg = |v: usize| t.degree(v) as i128;
    let target = |v: usize| -> Option<i128> {
        Some(match (profile, t.kind(v)) {
            (Profile::DWeighted(d), NodeKind::Round) => *d,
            (Profile::DWeighted(d), NodeKind::LightSquare) => d - deg(v),
            (Profile::DWeighted(d), NodeKind::DarkSquare) => d * deg(v) - d - deg(v),
            (Profile::DEWeighted { d, .. }, NodeKind::Round) => *d,
            (Profile::DEWeighted { d, e, marked }, NodeKind::LightSquare) => {
                if v == *marked {
                    e - deg(v)
                } else {
                    d - deg(v)
                }
            }
            (Profile::DEWeighted { d, e, marked }, NodeKind::DarkSquare) => {
                if v == *marked {
                    d * deg(v) - e - deg(v)
                } else {
                    d * deg(v) - d - deg(v)
                }
            }
            (Profile::ZeroWeighted | Profile::GeneralizedZeroWeighted(_), NodeKind::Round) => 0,
            (Profile::ZeroWeighted | Profile::GeneralizedZeroWeighted(_), _) => -deg(v),
            (Profile::ConsistentlyWeighted, _) => return None,
        })
    };
    (0..t.num_nodes())
        .map(|v| target(v).map(Rational::from))
        .collect()
}

/// All hypermobiles with exactly `size` edges plus buds satisfying `profile`,
/// for profiles that fix node weights. Marked profiles are handled by
/// [`enumerate_marked_mobiles`].
pub fn enumerate_hypermobiles(size: usize, profile: &Profile) -> Vec<Hypermobile> {
    enumerate_mobile_shapes(size)
        .into_iter()
        .filter_map(|t| {
            let targets = profile_targets(&t, profile)?;
            let w = solve_tree_weights(&t, |v| targets[v])?;
            crate::mobile::validate_profile(&w, profile).then_some(w)
        })
        .collect()
}

/// All (hypermobile, marked square) pairs with exactly `size` edges plus buds
/// that are `(d, e)`-weighted for the mark, each once up to isomorphism.
pub fn enumerate_marked_mobiles(
    size: usize,
    d: i128,
    e: i128,
    marked_kind: NodeKind,
) -> Vec<(Hypermobile, usize)> {
    let mut out = Vec::new();
    for t in enumerate_mobile_shapes(size) {
        let mut seen = BTreeSet::new();
        for v in 0..t.num_nodes() {
            if t.kind(v) != marked_kind {
                continue;
            }
            let profile = Profile::DEWeighted { d, e, marked: v };
            let Some(targets) = profile_targets(&t, &profile) else {
                continue;
            };
            let Some(w) = solve_tree_weights(&t, |u| targets[u]) else {
                continue;
            };
            if crate::mobile::validate_profile(&w, &profile)
                && seen.insert(w.canonical_form_with(|u| (u == v) as u64))
            {
                out.push((w, v));
            }
        }
    }
    out
}

/// Vertex degrees of the edges with their orientation state, for debugging and
/// display.
pub fn describe_orientation(h: &Hypermap, o: &Hyperorientation) -> String {
    let m = h.map();
    (0..m.num_edges())
        .map(|e| match o.status(e) {
            EdgeStatus::ZeroWay => format!("{e}:0"),
            EdgeStatus::OneWay(t) => format!("{e}:{}->{}", m.vertex(t), m.head(t)),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Dart labels of a face, used by tests that need explicit corners.
pub fn face_corners(h: &Hypermap, f: usize) -> Vec<Dart> {
    h.map().face_darts(f).to_vec()
}

/// A bipartite plane tree with black and white nodes and dangling half-edges:
/// outbuds at black nodes, inbuds at white nodes.
#[derive(Clone, Debug)]
pub struct BlossomTree {
    /// `true` for black nodes.
    pub black: Vec<bool>,
    /// Counterclockwise slots at each node: `Some(neighbour)` or `None` for a bud.
    pub rotation: Vec<Vec<Option<usize>>>,
}

impl BlossomTree {
    fn buds(&self, v: usize) -> i64 {
        self.rotation[v].iter().filter(|s| s.is_none()).count() as i64
    }

    /// Inbuds minus outbuds of the nodes selected by `keep`.
    fn charge_of(&self, keep: impl Fn(usize) -> bool) -> i64 {
        (0..self.black.len())
            .filter(|&v| keep(v))
            .map(|v| {
                if self.black[v] {
                    -self.buds(v)
                } else {
                    self.buds(v)
                }
            })
            .sum()
    }

    /// Inbuds minus outbuds.
    pub fn charge(&self) -> i64 {
        self.charge_of(|_| true)
    }

    /// Charge 1, and every planted subtree has charge at most 1 when its root
    /// is black and at least 0 when its root is white.
    pub fn is_well_charged(&self) -> bool {
        if self.charge() != 1 {
            return false;
        }
        for u in 0..self.black.len() {
            for &v in self.rotation[u].iter().flatten() {
                // The planted subtree rooted at `v` after cutting the edge `u`-`v`.
                let mut side = vec![false; self.black.len()];
                let mut stack = vec![v];
                side[v] = true;
                while let Some(x) = stack.pop() {
                    for &y in self.rotation[x].iter().flatten() {
                        if !side[y] && !(x == v && y == u) {
                            side[y] = true;
                            stack.push(y);
                        }
                    }
                }
                let c = self.charge_of(|x| side[x]);
                if (self.black[v] && c > 1) || (!self.black[v] && c < 0) {
                    return false;
                }
            }
        }
        true
    }

    /// The same tree written as a hypermobile shape (black as dark squares,
    /// white as light squares, outbuds as round leaves, inbuds as buds), used
    /// for isomorphism keys.
    pub fn as_mobile_shape(&self) -> Hypermobile {
        let mut kinds: Vec<NodeKind> = self
            .black
            .iter()
            .map(|&b| {
                if b {
                    NodeKind::DarkSquare
                } else {
                    NodeKind::LightSquare
                }
            })
            .collect();
        let mut rotation: Vec<Vec<Slot>> = vec![Vec::new(); self.black.len()];
        let mut edges = Vec::new();
        let mut edge_of = BTreeMap::new();
        for u in 0..self.black.len() {
            for slot in &self.rotation[u] {
                let s = match (*slot, self.black[u]) {
                    (Some(v), _) => {
                        let key = (u.min(v), u.max(v));
                        let e = *edge_of.entry(key).or_insert_with(|| {
                            edges.push(MobileEdge {
                                ends: [key.0, key.1],
                                weight: Rational::from(0),
                            });
                            edges.len() - 1
                        });
                        Slot::Edge(e)
                    }
                    (None, false) => Slot::Bud,
                    (None, true) => {
                        let leaf = kinds.len();
                        kinds.push(NodeKind::Round);
                        rotation.push(Vec::new());
                        edges.push(MobileEdge {
                            ends: [u, leaf],
                            weight: Rational::from(0),
                        });
                        rotation[leaf].push(Slot::Edge(edges.len() - 1));
                        Slot::Edge(edges.len() - 1)
                    }
                };
                rotation[u].push(s);
            }
        }
        Hypermobile::new(kinds, rotation, edges).expect("blossom trees are hypermobile shapes")
    }
}

/// All blossom trees with exactly `size` edges plus buds, once each up to
/// plane-tree isomorphism.
pub fn enumerate_blossom_trees(size: usize) -> Vec<BlossomTree> {
    #[derive(Clone)]
    enum Child {
        Bud,
        Node(Box<Planted>),
    }
    #[derive(Clone)]
    struct Planted {
        black: bool,
        children: Vec<Child>,
    }
    // Child sequences after the parent edge with `size` edges plus buds.
    fn sequences(black: bool, size: usize) -> Vec<Vec<Child>> {
        if size == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for rest in sequences(black, size - 1) {
            let mut seq = vec![Child::Bud];
            seq.extend(rest);
            out.push(seq);
        }
        for child_size in 0..size {
            for child in sequences(!black, child_size) {
                for rest in sequences(black, size - 1 - child_size) {
                    let mut seq = vec![Child::Node(Box::new(Planted {
                        black: !black,
                        children: child.clone(),
                    }))];
                    seq.extend(rest);
                    out.push(seq);
                }
            }
        }
        out
    }
    fn build(p: &Planted, parent: Option<usize>, t: &mut BlossomTree) -> usize {
        let v = t.black.len();
        t.black.push(p.black);
        t.rotation.push(parent.map(Some).into_iter().collect());
        for c in &p.children {
            match c {
                Child::Bud => t.rotation[v].push(None),
                Child::Node(q) => {
                    let w = build(q, Some(v), t);
                    t.rotation[v].push(Some(w));
                }
            }
        }
        v
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for black in [true, false] {
        for children in sequences(black, size) {
            let mut t = BlossomTree {
                black: Vec::new(),
                rotation: Vec::new(),
            };
            build(&Planted { black, children }, None, &mut t);
            if seen.insert(t.as_mobile_shape().canonical_form()) {
                out.push(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(1).len(), 1);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn one_edge_gives_only_the_loop() {
        let hs = enumerate_hypermaps(1);
        assert_eq!(hs.len(), 1);
        assert_eq!(
            hs[0].canonical_form(),
            crate::map::loop_hypermap().canonical_form()
        );
        let corners = enumerate_rooted_hypermaps(&EnumerationSpec::corner_rooted(1));
        assert_eq!(corners.len(), 2);
    }

    #[test]
    fn rooted_counts_match_eulerian_map_counts() {
        // Corner-rooted hypermaps with m edges are twice the rooted Eulerian
        // planar maps with m edges, 3 * 2^(m-1) * C(2m, m) / ((m+1)(m+2)).
        let expected = [1u64, 3, 12, 56, 288];
        for (m, &eulerian) in (1..=5).zip(expected.iter()) {
            let count = enumerate_hypermaps(m)
                .iter()
                .map(|h| rootings(h, &[], true).len() as u64)
                .sum::<u64>();
            assert_eq!(count, 2 * eulerian, "m = {m}");
        }
    }

    #[test]
    fn mobile_trivia() {
        let ones = enumerate_mobile_shapes(1);
        assert_eq!(ones.len(), 3);
    }

    #[test]
    fn tree_weights_are_forced() {
        let t = Hypermobile::from_mob("mob 1\nD(0:R, 0:L(*))").unwrap();
        let w = solve_tree_weights(&t, |v| Rational::from([1, -1, 2][v])).unwrap();
        assert_eq!(w.to_mob(), "mob 1\nD(-1:R, 2:L(*))\n");
        assert!(solve_tree_weights(&t, |_| Rational::from(1)).is_none());
    }

    #[test]
    fn d_weighted_mobiles_validate() {
        for size in 1..=4 {
            for t in enumerate_hypermobiles(size, &Profile::DWeighted(1)) {
                assert!(crate::mobile::validate_profile(&t, &Profile::DWeighted(1)));
            }
        }
        assert_eq!(enumerate_hypermobiles(1, &Profile::DWeighted(1)).len(), 1);
    }
}

/// Distances from the root vertex along edges oriented with their dark face
/// on the right.
fn distance_labels(r: &RootedHypermap) -> Vec<i128> {
    let h = r.hypermap();
    let m = h.map();
    let mut dist = vec![i128::MAX; m.num_vertices()];
    let v0 = r.root_vertex().unwrap();
    dist[v0] = 0;
    let mut queue = VecDeque::from([v0]);
    while let Some(u) = queue.pop_front() {
        for e in 0..m.num_edges() {
            let tail = h.light_dart(e);
            if m.vertex(tail) == u {
                let v = m.head(tail);
                if dist[v] == i128::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

/// Geodesic edges are 1-way with weight 0; the others are 0-way with weight
/// `label(head) - label(tail) - 1`.
pub fn geodesic_orientation(r: &RootedHypermap) -> Hyperorientation {
    let h = r.hypermap();
    let m = h.map();
    let label = distance_labels(r);
    let (mut flags, mut weights) = (Vec::new(), Vec::new());
    for e in 0..m.num_edges() {
        let tail = h.light_dart(e);
        let gap = label[m.head(tail)] - label[m.vertex(tail)] - 1;
        flags.push(gap == 0);
        weights.push(Rational::from(gap));
    }
    Hyperorientation::from_flags(h, &flags, weights)
}

/// Every hyperorientation whose 1-way edges have weight 0, whose 0-way edges
/// have negative integer weight, and whose faces have weight minus their
/// degree (vertex weights are then 0).
pub fn zero_weighted_orientations(r: &RootedHypermap) -> Vec<Hyperorientation> {
    let h = r.hypermap();
    let m = h.map();
    let ne = m.num_edges();
    let mut out = Vec::new();
    for mask in 0u32..1 << ne {
        let flags: Vec<bool> = (0..ne).map(|e| mask >> e & 1 == 1).collect();
        let free: Vec<usize> = (0..ne).filter(|&e| !flags[e]).collect();
        let lows: Vec<i128> = free
            .iter()
            .map(|&e| m.face_degree(m.face(h.light_dart(e))) as i128)
            .collect();
        let mut digits = vec![1i128; free.len()];
        loop {
            let mut weights = vec![Rational::from(0); ne];
            for (i, &e) in free.iter().enumerate() {
                weights[e] = Rational::from(-digits[i]);
            }
            let o = Hyperorientation::from_flags(h, &flags, weights);
            let report = weight_report(h, &o);
            if (0..m.num_faces())
                .all(|f| report.face[f] == -Rational::from(m.face_degree(f) as i128))
            {
                out.push(o);
            }
            let Some(i) = (0..digits.len()).find(|&i| digits[i] < lows[i]) else {
                break;
            };
            digits[i] += 1;
            for d in &mut digits[..i] {
                *d = 1;
            }
        }
    }
    out
}

/// The charge for which `weights` is a weighted orientation of `r`, if the
/// outer edges of a dark root carry weight 1.
fn charge_of(r: &RootedHypermap, weights: &[i128]) -> Option<Charge> {
    let h = r.hypermap();
    let m = h.map();
    let dark_root = (r.kind() == RootKind::Dark).then(|| r.root_face().unwrap());
    if dark_root.is_some() && r.outer_edges().iter().any(|&e| weights[e] != 1) {
        return None;
    }
    let o = Hyperorientation::from_flags(
        h,
        &weights.iter().map(|&w| w > 0).collect::<Vec<_>>(),
        weights.iter().map(|&w| Rational::from(w)).collect(),
    );
    let report = weight_report(h, &o);
    let mut c = Charge::zero(h);
    c.vertex = report.vertex.clone();
    if dark_root.is_some() {
        for v in r.outer_vertices() {
            c.vertex[v] -= Rational::from(1);
        }
    }
    for f in 0..m.num_faces() {
        let deg = Rational::from(m.face_degree(f) as i128);
        c.face[f] = if Some(f) == dark_root {
            -report.face[f]
        } else if h.is_dark_face(f) {
            -report.face[f] - deg
        } else {
            report.face[f] + deg
        };
    }
    Some(c)
}

/// Integer charges with entries in `[-6, 6]` that admit a weighted orientation
/// with edge weights in `{-1, 0, 1, 2}` (outer edges of a dark root weighted 1),
/// together with their shifts of one unit from a vertex to a face, which need
/// not fit. Each charge appears once.
pub fn small_charges(r: &RootedHypermap) -> Vec<Charge> {
    let ne = r.map().num_edges();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let values = [-1i128, 0, 1, 2];
    for code in 0..values.len().pow(ne as u32) {
        let weights: Vec<i128> = (0..ne)
            .map(|e| values[code / values.len().pow(e as u32) % values.len()])
            .collect();
        let Some(c) = charge_of(r, &weights) else {
            continue;
        };
        if c.vertex
            .iter()
            .chain(&c.face)
            .any(|x| *x > Rational::from(6) || *x < Rational::from(-6))
        {
            continue;
        }
        for candidate in std::iter::once(c.clone()).chain(shifted(&c)) {
            let key: Vec<Rational> = candidate
                .vertex
                .iter()
                .chain(&candidate.face)
                .copied()
                .collect();
            if seen.insert(key) {
                out.push(candidate);
            }
        }
    }
    out
}

/// Charges obtained by moving one unit of charge from a vertex to a face.
fn shifted(c: &Charge) -> Vec<Charge> {
    let mut out = Vec::new();
    for v in 0..c.vertex.len() {
        for f in 0..c.face.len() {
            let mut s = c.clone();
            s.vertex[v] -= Rational::from(1);
            s.face[f] += Rational::from(1);
            out.push(s);
        }
    }
    out
}

/// Vertex charges with the root at 0 and every other vertex a positive
/// multiple of one half, adding up to `2|V| - 4`.
pub fn balanced_partial_charges(nv: usize, root: usize) -> Vec<Vec<Rational>> {
    let target = 2 * (2 * nv as i128 - 4);
    let mut out = Vec::new();
    fn go(
        i: usize,
        nv: usize,
        root: usize,
        left: i128,
        cur: &mut Vec<Rational>,
        out: &mut Vec<Vec<Rational>>,
    ) {
        if i == nv {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if i == root {
            cur.push(Rational::from(0));
            go(i + 1, nv, root, left, cur, out);
            cur.pop();
            return;
        }
        for halves in 1..=left {
            cur.push(Rational::new(halves, 2));
            go(i + 1, nv, root, left - halves, cur, out);
            cur.pop();
        }
    }
    go(0, nv, root, target, &mut Vec::new(), &mut out);
    out
}

/// Annular hypermaps: face-rooted hypermaps of the given root kind with at most
/// `max_edges` edges and a marked inner face, up to isomorphism.
pub fn enumerate_annular(max_edges: usize, kind: RootKind) -> Vec<AnnularHypermap> {
    let rooted = if kind == RootKind::Dark {
        enumerate_rooted_hypermaps(&EnumerationSpec {
            max_edges,
            kinds: vec![RootKind::Dark],
            corners: false,
        })
    } else {
        enumerate_rooted_hypermaps(&EnumerationSpec {
            max_edges,
            kinds: vec![RootKind::Light],
            corners: false,
        })
    };
    let mut out = Vec::new();
    for r in rooted {
        let f0 = r.root_face().unwrap();
        // Marked faces up to the symmetries of the rooted hypermap.
        let mut seen = BTreeSet::new();
        for f1 in 0..r.map().num_faces() {
            if f1 == f0 {
                continue;
            }
            let key = r.canonical_form_with(|d| u64::from(r.map().face(d) == f1));
            if seen.insert(key) {
                out.push(AnnularHypermap::new(r.clone(), f1).unwrap());
            }
        }
    }
    out
}
