//! The master bijections between rooted hyperorientations and hypermobiles, and
//! their inverses by closure.
//!
//! The forward map places a square node in every face and a round node at every
//! vertex, then applies the local rule to each edge: a 0-way edge becomes a
//! mobile edge between its two squares, a 1-way edge becomes a mobile edge from
//! its dark square to the round node at its head plus a bud at its light square.
//! The slot order of a square is the order of the darts around its face.
//!
//! The inverse rebuilds one dart per square slot. Dark-light mobile edges pair
//! their two slots; buds are paired with round-edge slots by the cw-matching of
//! a cyclic word, computed either on the contour of the mobile (sprouts) or on
//! the boundary of the outerplanar map made of polygons.

use crate::error::{HypermapError, Result};
use crate::map::{CombinatorialMap, Dart, Hypermap, Root, RootKind, RootedHypermap};
use crate::mobile::{Hypermobile, MobileEdge, NodeKind, Slot};
use crate::orientation::{classify, Class, EdgeStatus, Engine, Hyperorientation};
use crate::Rational;

/// Result of the forward bijection with node bookkeeping.
#[derive(Clone, Debug)]
pub struct PhiImage {
    pub mobile: Hypermobile,
    /// Mobile node of every face, `None` when the face was deleted.
    pub face_node: Vec<Option<usize>>,
    /// Mobile node of every vertex, `None` when the vertex was deleted.
    pub vertex_node: Vec<Option<usize>>,
    /// Mobile edge of every hypermap edge, `None` when the edge was deleted or
    /// produced only a bud-free deleted fragment.
    pub edge_of: Vec<Option<usize>>,
}

/// The mobile fragment a single edge produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalRule {
    /// A mobile edge between the dark and the light square.
    DarkLight { weight: Rational },
    /// A mobile edge from the dark square to the round node at the head, and a
    /// bud at the light square.
    DarkRoundWithBud { weight: Rational },
}

/// The local rule applied to one edge of an oriented hypermap.
pub fn local_rule(o: &Hyperorientation, e: usize) -> LocalRule {
    let weight = o.weight(e);
    match o.status(e) {
        EdgeStatus::ZeroWay => LocalRule::DarkLight { weight },
        EdgeStatus::OneWay(_) => LocalRule::DarkRoundWithBud { weight },
    }
}

/// Whether the orientation lies in the enlarged family on which the forward map
/// is defined: light root with 1-way outer edges; dark root with a simple outer
/// face, 1-way outer edges and no inner edge entering an outer vertex; vertex
/// root with no edge entering the root vertex.
pub fn in_extended_class(r: &RootedHypermap, o: &Hyperorientation) -> bool {
    let m = r.map();
    match r.kind() {
        RootKind::Light => r.outer_edges().iter().all(|&e| o.is_one_way(e)),
        RootKind::Dark => {
            if !r.outer_face_is_simple() {
                return false;
            }
            let outer = r.outer_edges();
            if !outer.iter().all(|&e| o.is_one_way(e)) {
                return false;
            }
            let outer_vs = r.outer_vertices();
            (0..m.num_edges()).all(|e| {
                outer.contains(&e)
                    || match o.status(e) {
                        EdgeStatus::OneWay(t) => !outer_vs.contains(&m.head(t)),
                        EdgeStatus::ZeroWay => true,
                    }
            })
        }
        RootKind::Vertex => {
            let v0 = r.root_vertex().unwrap();
            (0..m.num_edges()).all(|e| match o.status(e) {
                EdgeStatus::OneWay(t) => m.head(t) != v0,
                EdgeStatus::ZeroWay => true,
            })
        }
    }
}

/// The forward bijection. Fails with `WrongClass` unless the orientation lies in
/// the class selected by the root.
pub fn phi(r: &RootedHypermap, o: &Hyperorientation) -> Result<PhiImage> {
    if classify(r, o, Engine::DualReachability) == Class::None {
        return Err(HypermapError::WrongClass(format!(
            "orientation is not in the class of a {:?} root",
            r.kind()
        )));
    }
    phi_extended(r, o)
}

/// Class membership decided by whether the forward map yields a tree, for
/// orientations in the enlarged family.
pub fn classify_by_tree(r: &RootedHypermap, o: &Hyperorientation) -> Class {
    if !in_extended_class(r, o) || phi_extended(r, o).is_err() {
        return Class::None;
    }
    match r.kind() {
        RootKind::Light => Class::InHPlus,
        RootKind::Dark => Class::InHMinus,
        RootKind::Vertex => Class::InHZero,
    }
}

/// The forward construction on the enlarged family; fails with `InvalidMobile`
/// when the result is not a hypermobile, and `WrongClass` outside the family.
pub fn phi_extended(r: &RootedHypermap, o: &Hyperorientation) -> Result<PhiImage> {
    if !in_extended_class(r, o) {
        return Err(HypermapError::WrongClass(
            "orientation violates the outer-edge conditions".into(),
        ));
    }
    let h = r.hypermap();
    let m = h.map();
    let nf = m.num_faces();
    let nv = m.num_vertices();
    let round = |v: usize| nf + v;

    let mut kinds: Vec<NodeKind> = (0..nf)
        .map(|f| {
            if h.is_dark_face(f) {
                NodeKind::DarkSquare
            } else {
                NodeKind::LightSquare
            }
        })
        .collect();
    kinds.extend(std::iter::repeat(NodeKind::Round).take(nv));
    let mut rotation: Vec<Vec<Slot>> = vec![Vec::new(); nf + nv];
    let mut ends: Vec<Option<[usize; 2]>> = vec![None; m.num_edges()];

    for e in 0..m.num_edges() {
        let x = h.dark_dart(e);
        let y = h.light_dart(e);
        ends[e] = Some(match o.status(e) {
            EdgeStatus::ZeroWay => [m.face(x), m.face(y)],
            EdgeStatus::OneWay(_) => [m.face(x), round(m.vertex(x))],
        });
    }
    for f in 0..nf {
        for &d in m.face_darts(f) {
            let e = m.edge(d);
            let slot = if !h.is_dark_face(f) && o.is_one_way(e) {
                Slot::Bud
            } else {
                Slot::Edge(e)
            };
            rotation[f].push(slot);
        }
    }
    for v in 0..nv {
        for &d in m.vertex_darts(v) {
            if h.is_dark_dart(d) && o.is_one_way(m.edge(d)) {
                rotation[round(v)].push(Slot::Edge(m.edge(d)));
            }
        }
    }

    // Deletions.
    let mut deleted_node = vec![false; nf + nv];
    let mut deleted_edge = vec![false; m.num_edges()];
    match r.root() {
        Root::Vertex(v0) => deleted_node[round(v0)] = true,
        _ => {
            let f0 = r.root_face().unwrap();
            deleted_node[f0] = true;
            if h.is_dark_face(f0) {
                for v in r.outer_vertices() {
                    deleted_node[round(v)] = true;
                }
                for e in r.outer_edges() {
                    deleted_edge[e] = true;
                }
            }
        }
    }
    for e in 0..m.num_edges() {
        if deleted_edge[e] {
            continue;
        }
        let [a, b] = ends[e].unwrap();
        if deleted_node[a] || deleted_node[b] {
            return Err(HypermapError::InvalidMobile(format!(
                "edge {e} reaches a deleted node"
            )));
        }
    }

    let mut new_id = vec![None; nf + nv];
    let mut count = 0;
    for v in 0..nf + nv {
        if !deleted_node[v] {
            new_id[v] = Some(count);
            count += 1;
        }
    }
    let mut edge_of = vec![None; m.num_edges()];
    let mut edges = Vec::new();
    for e in 0..m.num_edges() {
        if !deleted_edge[e] {
            edge_of[e] = Some(edges.len());
            let [a, b] = ends[e].unwrap();
            edges.push(MobileEdge {
                ends: [new_id[a].unwrap(), new_id[b].unwrap()],
                weight: o.weight(e),
            });
        }
    }
    let mut new_kinds = Vec::with_capacity(count);
    let mut new_rotation = Vec::with_capacity(count);
    for v in 0..nf + nv {
        if deleted_node[v] {
            continue;
        }
        new_kinds.push(kinds[v]);
        new_rotation.push(
            rotation[v]
                .iter()
                .map(|s| match *s {
                    Slot::Edge(e) => Slot::Edge(edge_of[e].expect("kept node has kept edges")),
                    Slot::Bud => Slot::Bud,
                })
                .collect(),
        );
    }
    let mobile = Hypermobile::new(new_kinds, new_rotation, edges)?;
    Ok(PhiImage {
        mobile,
        face_node: new_id[..nf].to_vec(),
        vertex_node: new_id[nf..].to_vec(),
        edge_of,
    })
}

/// A letter of a closure word: `Open` for a sprout or round-side edge, `Close`
/// for a bud.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Open,
    Close,
}

/// The cw-matching of a cyclic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwMatching {
    pub partner: Vec<Option<usize>>,
    /// Unmatched positions in increasing order; they all carry the majority letter.
    pub unmatched: Vec<usize>,
}

/// Matches every `Open` with the `Close` such that the cyclic subword strictly
/// between them is a parenthesis word.
pub fn cw_match(word: &[Letter]) -> CwMatching {
    let n = word.len();
    let opens = word.iter().filter(|l| **l == Letter::Open).count();
    if 2 * opens < n {
        // Reverse and swap letters; the matching relation is invariant.
        let mirrored: Vec<Letter> = word
            .iter()
            .rev()
            .map(|l| {
                if *l == Letter::Open {
                    Letter::Close
                } else {
                    Letter::Open
                }
            })
            .collect();
        let inner = cw_match(&mirrored);
        let back = |i: usize| n - 1 - i;
        let mut partner = vec![None; n];
        for (i, p) in inner.partner.iter().enumerate() {
            partner[back(i)] = p.map(back);
        }
        let mut unmatched: Vec<usize> = inner.unmatched.iter().map(|&i| back(i)).collect();
        unmatched.sort_unstable();
        return CwMatching { partner, unmatched };
    }
    // Start right after a position of minimal prefix sum: every prefix of the
    // rotated word is then nonnegative.
    let mut sum = 0i64;
    let mut best = (0i64, 0usize);
    for (i, l) in word.iter().enumerate() {
        sum += if *l == Letter::Open { 1 } else { -1 };
        if sum < best.0 {
            best = (sum, i + 1);
        }
    }
    let start = best.1;
    let mut partner = vec![None; n];
    let mut stack = Vec::new();
    for k in 0..n {
        let i = (start + k) % n;
        match word[i] {
            Letter::Open => stack.push(i),
            Letter::Close => {
                let j = stack.pop().expect("prefixes are nonnegative");
                partner[i] = Some(j);
                partner[j] = Some(i);
            }
        }
    }
    let mut unmatched = stack;
    unmatched.sort_unstable();
    CwMatching { partner, unmatched }
}

/// One outer element of a closure word: a slot of a square node.
pub type WordItem = (usize, usize);

/// A closure word: the outer elements in clockwise order with their letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWord {
    pub items: Vec<WordItem>,
    pub letters: Vec<Letter>,
}

impl ClosureWord {
    /// Whether two words agree up to cyclic shift.
    pub fn cyclically_equal(&self, other: &ClosureWord) -> bool {
        let n = self.items.len();
        if n != other.items.len() {
            return false;
        }
        if n == 0 {
            return true;
        }
        (0..n).any(|s| {
            (0..n).all(|k| {
                self.items[k] == other.items[(k + s) % n]
                    && self.letters[k] == other.letters[(k + s) % n]
            })
        })
    }
}

fn is_round_slot(t: &Hypermobile, v: usize, slot: usize) -> bool {
    match t.rotation(v)[slot] {
        Slot::Edge(e) => t.kind(t.other_end(e, v)) == NodeKind::Round,
        Slot::Bud => false,
    }
}

/// The closure word read on the contour of the mobile, walking clockwise with
/// the outside on the left: an ingoing sprout sits in the corner following each
/// dark-round edge counterclockwise around its dark square.
pub fn sprout_word(t: &Hypermobile) -> ClosureWord {
    let mut items = Vec::new();
    let mut letters = Vec::new();
    let steps: usize = (0..t.num_nodes()).map(|v| t.degree(v)).sum();
    if steps == 0 {
        return ClosureWord { items, letters };
    }
    let start = (0..t.num_nodes()).find(|&v| t.degree(v) > 0).unwrap();
    let (mut v, mut i) = (start, t.degree(start) - 1);
    for _ in 0..steps {
        let deg = t.degree(v);
        match t.rotation(v)[i] {
            Slot::Bud => {
                items.push((v, i));
                letters.push(Letter::Close);
                i = (i + deg - 1) % deg;
            }
            Slot::Edge(e) => {
                if t.kind(v) == NodeKind::DarkSquare && is_round_slot(t, v, i) {
                    items.push((v, i));
                    letters.push(Letter::Open);
                }
                let u = t.other_end(e, v);
                let j = t.slot_of(u, e);
                let du = t.degree(u);
                v = u;
                i = (j + du - 1) % du;
            }
        }
    }
    ClosureWord { items, letters }
}

/// The outerplanar map of a hypermobile: one polygon per square node, glued
/// along dark-light mobile edges, with the corners next to each round node
/// merged into one vertex.
#[derive(Clone, Debug)]
pub struct OuterplanarMap {
    pub map: CombinatorialMap,
    /// For polygon darts, the (square node, side) they come from.
    pub side_of_dart: Vec<Option<WordItem>>,
    /// Dart of every (square node, side), indexed by node then side.
    pub dart_of_side: Vec<Vec<Dart>>,
    /// The face holding every unglued side on its boundary.
    pub outer_face: usize,
    /// Darts of the outer face whose twin is a side from a dark-round edge.
    pub cw_outer: Vec<Dart>,
    /// Darts of the outer face whose twin is a side from a bud.
    pub ccw_outer: Vec<Dart>,
}

/// Builds the outerplanar map of `t` as an explicit combinatorial map.
pub fn outerplanar(t: &Hypermobile) -> Result<OuterplanarMap> {
    let n = t.num_nodes();
    let square = |v: usize| t.kind(v) != NodeKind::Round;
    // Polygon darts first, numbered by node then side.
    let mut dart_of_side = vec![Vec::new(); n];
    let mut side_of_dart = Vec::new();
    for v in 0..n {
        if square(v) {
            for s in 0..t.degree(v) {
                dart_of_side[v].push(side_of_dart.len());
                side_of_dart.push(Some((v, s)));
            }
        }
    }
    let polygon_darts = side_of_dart.len();
    let glued_partner = |v: usize, s: usize| -> Option<WordItem> {
        match t.rotation(v)[s] {
            Slot::Edge(e) => {
                let u = t.other_end(e, v);
                if square(u) {
                    Some((u, t.slot_of(u, e)))
                } else {
                    None
                }
            }
            Slot::Bud => None,
        }
    };
    // Outer twin darts for unglued sides.
    let mut outer_twin = vec![usize::MAX; polygon_darts];
    let mut total = polygon_darts;
    for d in 0..polygon_darts {
        let (v, s) = side_of_dart[d].unwrap();
        if glued_partner(v, s).is_none() {
            outer_twin[d] = total;
            total += 1;
        }
    }
    side_of_dart.resize(total, None);
    let mut alpha = vec![usize::MAX; total];
    for d in 0..polygon_darts {
        let (v, s) = side_of_dart[d].unwrap();
        match glued_partner(v, s) {
            Some((u, j)) => alpha[d] = dart_of_side[u][j],
            None => {
                alpha[d] = outer_twin[d];
                alpha[outer_twin[d]] = d;
            }
        }
    }
    let deg = |v: usize| t.degree(v);
    let prev_side = |v: usize, s: usize| (s + deg(v) - 1) % deg(v);
    // A fan is a chain of polygon corners around a vertex, listed
    // counterclockwise: after corner (P, s), whose side s leaves the vertex, the
    // next corner is reached across the glued side s-1 of P.
    let fan = |v: usize, s: usize| -> Vec<Dart> {
        let mut darts = Vec::new();
        let (mut p, mut side) = (v, s);
        loop {
            darts.push(dart_of_side[p][side]);
            let before = prev_side(p, side);
            match glued_partner(p, before) {
                Some((q, j)) => {
                    p = q;
                    side = j;
                }
                None => {
                    darts.push(outer_twin[dart_of_side[p][before]]);
                    return darts;
                }
            }
        }
    };
    let mut sigma = vec![usize::MAX; total];
    let link = |sigma: &mut Vec<Dart>, cycle: &[Dart]| {
        for k in 0..cycle.len() {
            sigma[cycle[k]] = cycle[(k + 1) % cycle.len()];
        }
    };
    // Fans start at corners whose leaving side is unglued.
    let starts_fan = |v: usize, s: usize| glued_partner(v, s).is_none();
    for v in 0..n {
        match t.kind(v) {
            NodeKind::Round => {
                // All fans at a round node: one per incident dark square, in the
                // rotation order of the round node.
                let mut cycle = Vec::new();
                for slot in t.rotation(v) {
                    let Slot::Edge(e) = *slot else {
                        unreachable!("round nodes carry no buds")
                    };
                    let d = t.other_end(e, v);
                    cycle.extend(fan(d, t.slot_of(d, e)));
                }
                link(&mut sigma, &cycle);
            }
            _ => {
                for s in 0..deg(v) {
                    if starts_fan(v, s) && !is_round_slot(t, v, s) {
                        let cycle = fan(v, s);
                        link(&mut sigma, &cycle);
                    }
                }
            }
        }
    }
    // Corners surrounded by glued sides only form closed cycles.
    for d in 0..polygon_darts {
        if sigma[d] != usize::MAX {
            continue;
        }
        let mut cycle = vec![d];
        loop {
            let (p, side) = side_of_dart[*cycle.last().unwrap()].unwrap();
            let (q, j) =
                glued_partner(p, prev_side(p, side)).expect("closed cycles cross glued sides only");
            let next = dart_of_side[q][j];
            if next == d {
                break;
            }
            cycle.push(next);
        }
        link(&mut sigma, &cycle);
    }
    if sigma.iter().any(|&s| s == usize::MAX) {
        return Err(HypermapError::InvalidMobile(
            "polygon corners do not close into vertices".into(),
        ));
    }
    let map = CombinatorialMap::new(alpha, sigma)?;
    if map.genus() != 0 {
        return Err(HypermapError::NotPlanar(map.genus()));
    }
    let outer_darts: Vec<Dart> = (polygon_darts..total).collect();
    let outer_face = if outer_darts.is_empty() {
        usize::MAX
    } else {
        let f = map.face(outer_darts[0]);
        if map.face_darts(f).len() != outer_darts.len()
            || outer_darts.iter().any(|&d| map.face(d) != f)
        {
            return Err(HypermapError::InvalidMobile(
                "unglued sides do not bound a single face".into(),
            ));
        }
        f
    };
    let mut cw_outer = Vec::new();
    let mut ccw_outer = Vec::new();
    for &o in &outer_darts {
        let (v, s) = side_of_dart[map.alpha(o)].unwrap();
        if t.rotation(v)[s] == Slot::Bud {
            ccw_outer.push(o);
        } else {
            cw_outer.push(o);
        }
    }
    Ok(OuterplanarMap {
        map,
        side_of_dart,
        dart_of_side,
        outer_face,
        cw_outer,
        ccw_outer,
    })
}

/// The closure word read around the outer face of the outerplanar map.
pub fn outerplanar_word(t: &Hypermobile) -> Result<ClosureWord> {
    let op = outerplanar(t)?;
    let mut items = Vec::new();
    let mut letters = Vec::new();
    if op.outer_face == usize::MAX {
        return Ok(ClosureWord { items, letters });
    }
    // Walking the outer face with the face on the left goes clockwise around
    // the polygons.
    for &o in op.map.face_darts(op.outer_face) {
        let item = op.side_of_dart[op.map.alpha(o)].unwrap();
        items.push(item);
        letters.push(if t.rotation(item.0)[item.1] == Slot::Bud {
            Letter::Close
        } else {
            Letter::Open
        });
    }
    Ok(ClosureWord { items, letters })
}

/// Inverse bijection using the outerplanar map formulation.
pub fn psi(t: &Hypermobile) -> Result<(RootedHypermap, Hyperorientation)> {
    let word = outerplanar_word(t)?;
    close(t, &word)
}

/// Inverse bijection using the sprout formulation.
pub fn psi_sprouts(t: &Hypermobile) -> Result<(RootedHypermap, Hyperorientation)> {
    close(t, &sprout_word(t))
}

/// Glues the cw-matching pairs of a closure word and builds the rooted oriented
/// hypermap.
pub fn close(t: &Hypermobile, word: &ClosureWord) -> Result<(RootedHypermap, Hyperorientation)> {
    let n = t.num_nodes();
    let mut offset = vec![usize::MAX; n];
    let mut darts = 0;
    for v in 0..n {
        if t.kind(v) != NodeKind::Round {
            offset[v] = darts;
            darts += t.degree(v);
        }
    }
    let dart = |(v, s): WordItem| offset[v] + s;
    let matching = cw_match(&word.letters);
    let unmatched: Vec<WordItem> = matching.unmatched.iter().map(|&i| word.items[i]).collect();
    let excess = t.excess();
    let total = darts + unmatched.len();
    let mut alpha = vec![usize::MAX; total];
    let mut next = vec![usize::MAX; total];
    let mut is_dark = vec![false; total];
    for v in 0..n {
        if t.kind(v) == NodeKind::Round {
            continue;
        }
        let k = t.degree(v);
        for s in 0..k {
            next[offset[v] + s] = offset[v] + (s + 1) % k;
            is_dark[offset[v] + s] = t.kind(v) == NodeKind::DarkSquare;
            if let Slot::Edge(e) = t.rotation(v)[s] {
                let u = t.other_end(e, v);
                if t.kind(u) != NodeKind::Round {
                    alpha[offset[v] + s] = offset[u] + t.slot_of(u, e);
                }
            }
        }
    }
    for (i, p) in matching.partner.iter().enumerate() {
        if let Some(j) = *p {
            alpha[dart(word.items[i])] = dart(word.items[j]);
        }
    }
    // The new root face visits its darts in word order.
    let k = unmatched.len();
    for (idx, &item) in unmatched.iter().enumerate() {
        let o = darts + idx;
        alpha[o] = dart(item);
        alpha[dart(item)] = o;
        next[o] = darts + (idx + 1) % k;
        is_dark[o] = excess < 0;
    }
    if alpha.iter().any(|&a| a == usize::MAX) {
        return Err(HypermapError::InvalidMobile(
            "closure left a slot unpaired".into(),
        ));
    }
    // sigma = (next . alpha)^-1
    let mut sigma = vec![0; total];
    for d in 0..total {
        sigma[next[alpha[d]]] = d;
    }
    let map = CombinatorialMap::new(alpha, sigma)?;
    let mut dark_face = vec![false; map.num_faces()];
    for d in 0..total {
        dark_face[map.face(d)] = is_dark[d];
    }
    let h = Hypermap::with_colors(map, dark_face)?;
    let m = h.map();

    let mut status = vec![EdgeStatus::ZeroWay; m.num_edges()];
    let mut weight = vec![Rational::from(0); m.num_edges()];
    for v in 0..n {
        if t.kind(v) == NodeKind::Round {
            continue;
        }
        for s in 0..t.degree(v) {
            let d = offset[v] + s;
            let e = m.edge(d);
            match t.rotation(v)[s] {
                Slot::Edge(me) => {
                    let w = t.edge(me).weight;
                    if is_round_slot(t, v, s) {
                        status[e] = EdgeStatus::OneWay(m.alpha(d));
                        weight[e] = w;
                    } else if t.kind(v) == NodeKind::DarkSquare {
                        weight[e] = w;
                    }
                }
                Slot::Bud => {
                    status[e] = EdgeStatus::OneWay(d);
                    if m.alpha(d) >= darts {
                        weight[e] = Rational::from(1);
                    }
                }
            }
        }
    }
    let o = Hyperorientation::new(&h, status, weight)?;
    let root = if k == 0 {
        let mut indegree = vec![0usize; m.num_vertices()];
        for e in 0..m.num_edges() {
            if let EdgeStatus::OneWay(tail) = o.status(e) {
                indegree[m.head(tail)] += 1;
            }
        }
        let sources: Vec<usize> = (0..m.num_vertices())
            .filter(|&v| indegree[v] == 0)
            .collect();
        if sources.len() != 1 {
            return Err(HypermapError::InvalidMobile(format!(
                "{} vertices without ingoing edge",
                sources.len()
            )));
        }
        Root::Vertex(sources[0])
    } else {
        let f0 = m.face(darts);
        if excess < 0 {
            Root::DarkFace(f0)
        } else {
            Root::LightFace(f0)
        }
    };
    let rooted = RootedHypermap::new(h, root)?;
    Ok((rooted, o))
}

/// Injective per-dart encoding of orientation data for isomorphism keys:
/// tail flag and edge weight.
pub fn orientation_decoration(
    r: &RootedHypermap,
    o: &Hyperorientation,
    with_weight: impl Fn(usize) -> bool,
) -> Vec<u64> {
    let m = r.map();
    (0..m.n_darts())
        .map(|d| {
            let e = m.edge(d);
            let tail = matches!(o.status(e), EdgeStatus::OneWay(t) if t == d) as u64;
            let (p, q) = if with_weight(e) {
                let w = o.weight(e);
                (*w.numer(), *w.denom())
            } else {
                (0, 1)
            };
            assert!(
                p.abs() < (1 << 28) && q < (1 << 28),
                "weight too large for the decoration encoding"
            );
            let p = (p + (1 << 28)) as u64;
            (((p << 29) | q as u64) << 1) | tail
        })
        .collect()
}

/// Rooted isomorphism key of an oriented hypermap. Weights of frozen outer
/// edges of a dark root are ignored, since the forward map forgets them.
pub fn oriented_key(r: &RootedHypermap, o: &Hyperorientation) -> crate::map::CanonicalKey {
    let frozen: Vec<usize> = if r.kind() == RootKind::Dark {
        r.outer_edges()
    } else {
        Vec::new()
    };
    let deco = orientation_decoration(r, o, |e| !frozen.contains(&e));
    r.canonical_form_with(|d| deco[d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::loop_hypermap;

    fn r(n: i128) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn cw_match_examples() {
        use Letter::*;
        let m = cw_match(&[Open, Close]);
        assert_eq!(m.partner, vec![Some(1), Some(0)]);
        assert!(m.unmatched.is_empty());
        let m = cw_match(&[Open, Open]);
        assert_eq!(m.unmatched, vec![0, 1]);
        let m = cw_match(&[Close, Open]);
        assert_eq!(m.partner, vec![Some(1), Some(0)]);
        let m = cw_match(&[Close, Close, Open]);
        assert_eq!(m.unmatched.len(), 1);
    }

    #[test]
    fn loop_maps_to_single_bud() {
        let h = loop_hypermap();
        let f = h.map().face(0);
        let rooted = RootedHypermap::new(h.clone(), Root::DarkFace(f)).unwrap();
        let o = Hyperorientation::from_flags(&h, &[true], vec![r(1)]);
        let img = phi(&rooted, &o).unwrap();
        assert_eq!(img.mobile.num_nodes(), 1);
        assert_eq!(img.mobile.kind(0), NodeKind::LightSquare);
        assert_eq!(img.mobile.num_buds(), 1);
        assert_eq!(img.mobile.excess(), -1);
        for (back, bo) in [psi(&img.mobile).unwrap(), psi_sprouts(&img.mobile).unwrap()] {
            assert_eq!(oriented_key(&back, &bo), oriented_key(&rooted, &o));
        }
    }

    #[test]
    fn local_rules() {
        let h = loop_hypermap();
        let zero = Hyperorientation::from_flags(&h, &[false], vec![r(-2)]);
        assert_eq!(local_rule(&zero, 0), LocalRule::DarkLight { weight: r(-2) });
        let one = Hyperorientation::from_flags(&h, &[true], vec![r(1)]);
        assert_eq!(
            local_rule(&one, 0),
            LocalRule::DarkRoundWithBud { weight: r(1) }
        );
    }

    #[test]
    fn outerplanar_of_trivia() {
        let bud = Hypermobile::from_mob("mob 1\nL(*)").unwrap();
        let op = outerplanar(&bud).unwrap();
        assert_eq!(op.ccw_outer.len(), 1);
        assert!(op.cw_outer.is_empty());
        let dr = Hypermobile::from_mob("mob 1\nD(1:R)").unwrap();
        let op = outerplanar(&dr).unwrap();
        assert_eq!(op.cw_outer.len(), 1);
        assert!(op.ccw_outer.is_empty());
    }

    #[test]
    fn words_agree_on_small_mobile() {
        let t = Hypermobile::from_mob("mob 1\nD(1:R, -1:L(*, *), 2:R(3:D(1:R, 0:L(*))))").unwrap();
        let a = sprout_word(&t);
        let b = outerplanar_word(&t).unwrap();
        assert!(a.cyclically_equal(&b), "{a:?} vs {b:?}");
    }

    fn assert_round_trip(text: &str) {
        let t = Hypermobile::from_mob(text).unwrap();
        let (rooted, o) = psi(&t).unwrap_or_else(|e| panic!("{text}: {e}"));
        let (rooted2, o2) = psi_sprouts(&t).unwrap_or_else(|e| panic!("sprouts {text}: {e}"));
        assert_eq!(oriented_key(&rooted, &o), oriented_key(&rooted2, &o2));
        let img = phi(&rooted, &o).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(img.mobile.canonical_form(), t.canonical_form(), "{text}");
    }

    #[test]
    fn closure_then_forward_is_identity() {
        for text in [
            "mob 1\nL(*)",
            "mob 1\nL(*, *, *)",
            "mob 1\nD(1:R)",
            "mob 1\nD(1:R, 2:R)",
            "mob 1\nD(1:R, -1:L(*, *))",
            "mob 1\nD(1:R, -1:L(*))",
            "mob 1\nD(0:L(*))",
            "mob 1\nD(1:R, -1:L(*, *), 2:R(3:D(1:R, 0:L(*))))",
            "mob 1\nR(1:D(0:L(*, *)), 2:D(1:R, -1:L(*)))",
            "mob 1\nL(*, 1:D(2:R, 3:R), *, 4:D(5:R))",
        ] {
            assert_round_trip(text);
        }
    }
}
