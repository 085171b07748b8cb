//! Hyperflows on bipartite graphs: feasibility, the subset criterion,
//! minimality in a plane embedding, and the correspondence with
//! nonnegatively weighted hyperorientations through the star graph.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::charge::Charge;
use crate::error::{HypermapError, Result};
use crate::map::{Hypermap, RootKind, RootedHypermap};
use crate::orientation::{EdgeStatus, Hyperorientation};
use crate::Rational;

/// Nonnegative value per edge of a bipartite graph.
pub type Hyperflow = Vec<Rational>;

fn zero() -> Rational {
    Rational::from(0)
}

/// A bipartite graph with sides `X = 0..num_x` and `Y = 0..num_y`; parallel
/// edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub num_x: usize,
    pub num_y: usize,
    /// `(x, y)` for every edge.
    pub ends: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(num_x: usize, num_y: usize, ends: Vec<(usize, usize)>) -> Self {
        assert!(
            ends.iter().all(|&(x, y)| x < num_x && y < num_y),
            "edge end out of range"
        );
        BipartiteGraph { num_x, num_y, ends }
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    /// Edges incident to each `x`.
    pub fn x_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_x];
        for (e, &(x, _)) in self.ends.iter().enumerate() {
            out[x].push(e);
        }
        out
    }

    /// Edges incident to each `y`.
    pub fn y_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_y];
        for (e, &(_, y)) in self.ends.iter().enumerate() {
            out[y].push(e);
        }
        out
    }
}

/// Prescribed flow total at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Demand {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

/// Sum of the flow on the edges at every node.
pub fn node_totals(g: &BipartiteGraph, flow: &[Rational]) -> Demand {
    let mut x = vec![zero(); g.num_x];
    let mut y = vec![zero(); g.num_y];
    for (e, &(a, b)) in g.ends.iter().enumerate() {
        x[a] += flow[e];
        y[b] += flow[e];
    }
    Demand { x, y }
}

/// Whether `flow` is nonnegative and meets `alpha` exactly at every node.
pub fn is_alpha_hyperflow(g: &BipartiteGraph, alpha: &Demand, flow: &[Rational]) -> bool {
    flow.len() == g.num_edges()
        && flow.iter().all(|v| *v >= zero())
        && node_totals(g, flow) == *alpha
}

/// The quantity `alpha(A) = sum over A of alpha(x) - sum over Y_A of alpha(y)`,
/// where `Y_A` holds the `y` whose neighbours all lie in `A`; `in_a` marks `A`.
pub fn subset_balance(g: &BipartiteGraph, alpha: &Demand, in_a: &[bool]) -> Rational {
    let mut all_inside = vec![true; g.num_y];
    for &(x, y) in &g.ends {
        if !in_a[x] {
            all_inside[y] = false;
        }
    }
    let from_x: Rational = (0..g.num_x).filter(|&x| in_a[x]).map(|x| alpha.x[x]).sum();
    let from_y: Rational = (0..g.num_y)
        .filter(|&y| all_inside[y])
        .map(|y| alpha.y[y])
        .sum();
    from_x - from_y
}

fn subsets_by_size(n: usize) -> Vec<u32> {
    assert!(n <= 24, "subset enumeration is limited to 24 nodes");
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

fn mask_members(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Checks the subset criterion for the existence of an alpha-hyperflow by
/// exhaustive enumeration: `alpha(A) >= 0` for every `A` with equality for
/// `A = X`. Returns a smallest violating set.
pub fn check_existence_criterion(
    g: &BipartiteGraph,
    alpha: &Demand,
) -> std::result::Result<(), Vec<usize>> {
    let n = g.num_x;
    let full = (1u32 << n) - 1;
    for mask in subsets_by_size(n) {
        let in_a = mask_members(mask, n);
        let balance = subset_balance(g, alpha, &in_a);
        if balance < zero() || (mask == full && balance != zero()) {
            return Err((0..n).filter(|&x| in_a[x]).collect());
        }
    }
    Ok(())
}

/// Whether `alpha(A) > 0` for every nonempty `A` avoiding `x0`; by the subset
/// criterion this decides whether alpha-hyperflows are accessible from `x0`.
pub fn accessibility_criterion(g: &BipartiteGraph, alpha: &Demand, x0: usize) -> bool {
    let n = g.num_x;
    subsets_by_size(n)
        .into_iter()
        .filter(|&m| m != 0 && m >> x0 & 1 == 0)
        .all(|m| subset_balance(g, alpha, &mask_members(m, n)) > zero())
}

/// The `x` reachable from `x0` by paths that go from `x` to `y` freely and
/// from `y` to `x` only along edges of positive flow.
pub fn positively_reachable(g: &BipartiteGraph, flow: &[Rational], x0: usize) -> Vec<bool> {
    let x_edges = g.x_edges();
    let y_edges = g.y_edges();
    let mut seen_x = vec![false; g.num_x];
    let mut seen_y = vec![false; g.num_y];
    let mut queue = VecDeque::from([x0]);
    seen_x[x0] = true;
    while let Some(x) = queue.pop_front() {
        for &e in &x_edges[x] {
            let y = g.ends[e].1;
            if seen_y[y] {
                continue;
            }
            seen_y[y] = true;
            for &f in &y_edges[y] {
                let x2 = g.ends[f].0;
                if flow[f] > zero() && !seen_x[x2] {
                    seen_x[x2] = true;
                    queue.push_back(x2);
                }
            }
        }
    }
    seen_x
}

/// Residual network with exact rational capacities.
struct Network {
    head: Vec<usize>,
    cap: Vec<Rational>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    /// Adds an arc and its reverse; returns the arc index.
    fn arc(&mut self, from: usize, to: usize, cap: Rational) -> usize {
        let a = self.head.len();
        self.head.extend([to, from]);
        self.cap.extend([cap, zero()]);
        self.out[from].push(a);
        self.out[to].push(a + 1);
        a
    }

    /// Shortest augmenting paths until none is left; returns the flow value.
    fn max_flow(&mut self, s: usize, t: usize) -> Rational {
        let mut total = zero();
        loop {
            let mut via = vec![usize::MAX; self.out.len()];
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let v = self.head[a];
                    if v != s && via[v] == usize::MAX && self.cap[a] > zero() {
                        via[v] = a;
                        if v == t {
                            found = true;
                            break;
                        }
                        queue.push_back(v);
                    }
                }
                if found {
                    break;
                }
            }
            if !found {
                return total;
            }
            let mut push: Option<Rational> = None;
            let mut v = t;
            while v != s {
                let a = via[v];
                push = Some(push.map_or(self.cap[a], |p| p.min(self.cap[a])));
                v = self.head[a ^ 1];
            }
            let push = push.expect("path has an arc");
            let mut v = t;
            while v != s {
                let a = via[v];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                v = self.head[a ^ 1];
            }
            total += push;
        }
    }

    /// Nodes reachable from `s` in the residual network.
    fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let v = self.head[a];
                if !seen[v] && self.cap[a] > zero() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Edges whose value is forced by a node with a single remaining edge, with
/// the demands left once they are fixed. `None` when forcing runs into a
/// contradiction, which the caller resolves with the full computation.
fn peel_forced(g: &BipartiteGraph, alpha: &Demand) -> Option<(Vec<Option<Rational>>, Demand)> {
    let x_edges = g.x_edges();
    let y_edges = g.y_edges();
    let mut fixed: Vec<Option<Rational>> = vec![None; g.num_edges()];
    let mut rest = alpha.clone();
    let mut alive_x: Vec<usize> = x_edges.iter().map(Vec::len).collect();
    let mut alive_y: Vec<usize> = y_edges.iter().map(Vec::len).collect();
    // Nodes are encoded as x or num_x + y.
    let nx = g.num_x;
    let mut stack: Vec<usize> = (0..nx).filter(|&x| alive_x[x] == 1).collect();
    stack.extend((0..g.num_y).filter(|&y| alive_y[y] == 1).map(|y| nx + y));
    while let Some(node) = stack.pop() {
        let (edges, count) = if node < nx {
            (&x_edges[node], alive_x[node])
        } else {
            (&y_edges[node - nx], alive_y[node - nx])
        };
        if count != 1 {
            continue;
        }
        let e = *edges
            .iter()
            .find(|&&e| fixed[e].is_none())
            .expect("one live edge");
        let (x, y) = g.ends[e];
        let value = if node < nx { rest.x[x] } else { rest.y[y] };
        fixed[e] = Some(value);
        rest.x[x] -= value;
        rest.y[y] -= value;
        if rest.x[x] < zero() || rest.y[y] < zero() {
            return None;
        }
        alive_x[x] -= 1;
        alive_y[y] -= 1;
        if alive_x[x] == 1 {
            stack.push(x);
        }
        if alive_y[y] == 1 {
            stack.push(nx + y);
        }
    }
    Some((fixed, rest))
}

/// Solves the transportation problem on the edges not in `fixed`; returns
/// the flow on those edges or the residual reachability when it falls short.
fn transport(
    g: &BipartiteGraph,
    alpha: &Demand,
    fixed: &[Option<Rational>],
) -> std::result::Result<Vec<Rational>, Vec<bool>> {
    let nx = g.num_x;
    let s = nx + g.num_y;
    let t = s + 1;
    let mut net = Network::new(t + 1);
    let unbounded: Rational = alpha.x.iter().sum::<Rational>() + Rational::from(1);
    for x in 0..nx {
        net.arc(s, x, alpha.x[x]);
    }
    for y in 0..g.num_y {
        net.arc(nx + y, t, alpha.y[y]);
    }
    let mut arc_of = vec![usize::MAX; g.num_edges()];
    for (e, &(x, y)) in g.ends.iter().enumerate() {
        if fixed[e].is_none() {
            arc_of[e] = net.arc(x, nx + y, unbounded);
        }
    }
    let need: Rational = alpha.x.iter().sum();
    let got = net.max_flow(s, t);
    if got != need {
        return Err(net.residual_reach(s));
    }
    Ok((0..g.num_edges())
        .map(|e| fixed[e].unwrap_or_else(|| net.cap[arc_of[e] ^ 1]))
        .collect())
}

/// Finds some alpha-hyperflow by exact augmenting paths. On failure the error
/// carries a set `A` of `X` with `alpha(A) < 0` (or `A = X` when the totals of
/// the two sides differ).
pub fn find_alpha_hyperflow(g: &BipartiteGraph, alpha: &Demand) -> Result<Hyperflow> {
    if let Some(x) = (0..g.num_x).find(|&x| alpha.x[x] < zero()) {
        return Err(HypermapError::NegativeDemand(format!("x{x}")));
    }
    if let Some(y) = (0..g.num_y).find(|&y| alpha.y[y] < zero()) {
        return Err(HypermapError::NegativeDemand(format!("y{y}")));
    }
    let sx: Rational = alpha.x.iter().sum();
    let sy: Rational = alpha.y.iter().sum();
    if sx != sy {
        return Err(HypermapError::Infeasible {
            certificate: (0..g.num_x).collect(),
        });
    }
    if let Some((fixed, rest)) = peel_forced(g, alpha) {
        if let Ok(flow) = transport(g, &rest, &fixed) {
            debug_assert!(is_alpha_hyperflow(g, alpha, &flow));
            return Ok(flow);
        }
    }
    match transport(g, alpha, &vec![None; g.num_edges()]) {
        Ok(flow) => Ok(flow),
        Err(reach) => {
            let certificate: Vec<usize> = (0..g.num_x).filter(|&x| !reach[x]).collect();
            debug_assert!({
                let in_a: Vec<bool> = (0..g.num_x).map(|x| !reach[x]).collect();
                subset_balance(g, alpha, &in_a) < zero()
            });
            Err(HypermapError::Infeasible { certificate })
        }
    }
}

/// A bipartite graph drawn in the plane: for each edge, read from its `x` end
/// to its `y` end, the faces on its left and right.
#[derive(Clone, Debug)]
pub struct PlaneBipartite {
    pub graph: BipartiteGraph,
    pub num_faces: usize,
    pub sides: Vec<(usize, usize)>,
    pub outer: usize,
}

/// The star graph of a face-rooted hypermap: hypermap vertices on one side,
/// dark faces on the other, and one edge per dark corner. Edge `e` of the star
/// graph sits in the corner of the dark dart of hypermap edge `e`. Faces of the
/// drawing are numbered like the light faces of the hypermap.
#[derive(Clone, Debug)]
pub struct StarGraph {
    pub plane: PlaneBipartite,
    /// Dark face of each `y`.
    pub face_of_y: Vec<usize>,
    /// `y` of each dark face.
    pub y_of_face: Vec<Option<usize>>,
}

impl StarGraph {
    pub fn graph(&self) -> &BipartiteGraph {
        &self.plane.graph
    }
}

/// Builds the star graph of `h` drawn with `outer` (a light face) as outer face.
pub fn star_graph(h: &Hypermap, outer: usize) -> StarGraph {
    assert!(
        !h.is_dark_face(outer),
        "the star graph is drawn around a light face"
    );
    let m = h.map();
    let face_of_y: Vec<usize> = h.dark_faces().collect();
    let mut y_of_face = vec![None; m.num_faces()];
    for (y, &f) in face_of_y.iter().enumerate() {
        y_of_face[f] = Some(y);
    }
    let mut ends = Vec::with_capacity(m.num_edges());
    let mut sides = Vec::with_capacity(m.num_edges());
    for e in 0..m.num_edges() {
        let d = h.dark_dart(e);
        ends.push((m.vertex(d), y_of_face[m.face(d)].expect("dark face")));
        sides.push((m.face(m.sigma(d)), m.face(m.alpha(d))));
    }
    let graph = BipartiteGraph::new(m.num_vertices(), face_of_y.len(), ends);
    StarGraph {
        plane: PlaneBipartite {
            graph,
            num_faces: m.num_faces(),
            sides,
            outer,
        },
        face_of_y,
        y_of_face,
    }
}

/// The demand whose hyperflows correspond to the charge-weighted
/// orientations of a light-rooted hypermap in which every light face has
/// charge equal to its degree: the charge on vertices, and minus charge minus
/// degree on dark faces.
pub fn alpha_demand(r: &RootedHypermap, charge: &Charge) -> Result<Demand> {
    if r.kind() != RootKind::Light {
        return Err(HypermapError::InvalidRoot(
            "the demand is defined for light-rooted hypermaps".into(),
        ));
    }
    let h = r.hypermap();
    let m = h.map();
    for f in h.light_faces() {
        if charge.face[f] != Rational::from(m.face_degree(f) as i128) {
            return Err(HypermapError::NotFitting(format!(
                "light face {f} has charge {} but degree {}",
                charge.face[f],
                m.face_degree(f)
            )));
        }
    }
    let x: Vec<Rational> = charge.vertex.clone();
    let y: Vec<Rational> = h
        .dark_faces()
        .map(|f| -charge.face[f] - Rational::from(m.face_degree(f) as i128))
        .collect();
    if let Some(v) = x.iter().position(|a| *a < zero()) {
        return Err(HypermapError::NegativeDemand(format!(
            "vertex {v}: {}",
            x[v]
        )));
    }
    if let Some(i) = y.iter().position(|a| *a < zero()) {
        let f = h.dark_faces().nth(i).expect("dark face");
        return Err(HypermapError::NegativeDemand(format!(
            "dark face {f}: {}",
            y[i]
        )));
    }
    Ok(Demand { x, y })
}

/// Face adjacency across edges, skipping the edges flagged in `cut`.
fn flood(plane: &PlaneBipartite, seeds: &[usize], cut: &[bool]) -> Vec<bool> {
    let mut adj = vec![Vec::new(); plane.num_faces];
    for (e, &(l, r)) in plane.sides.iter().enumerate() {
        if !cut[e] {
            adj[l].push(r);
            adj[r].push(l);
        }
    }
    let mut seen = vec![false; plane.num_faces];
    let mut stack = Vec::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(f) = stack.pop() {
        for &g in &adj[f] {
            if !seen[g] {
                seen[g] = true;
                stack.push(g);
            }
        }
    }
    seen
}

/// One step of a directed cycle: an edge and whether it is traversed from its
/// `x` end to its `y` end.
pub type CycleStep = (usize, bool);

/// A directed simple cycle with the faces it encloses on its left.
#[derive(Clone, Debug)]
pub struct EnclosingCycle {
    pub steps: Vec<CycleStep>,
    pub enclosed: Vec<bool>,
}

/// Every flow-positive counterclockwise simple cycle: steps toward `Y` are
/// free, steps toward `X` need positive flow, and the outer face lies on the
/// right. Exponential; meant for small instances.
pub fn positive_ccw_cycles(plane: &PlaneBipartite, flow: &[Rational]) -> Vec<EnclosingCycle> {
    let g = &plane.graph;
    let nx = g.num_x;
    let n = nx + g.num_y;
    // Arcs out of each node as (edge, toward_y, target).
    let mut arcs: Vec<Vec<(usize, bool, usize)>> = vec![Vec::new(); n];
    for (e, &(x, y)) in g.ends.iter().enumerate() {
        arcs[x].push((e, true, nx + y));
        if flow[e] > zero() {
            arcs[nx + y].push((e, false, x));
        }
    }
    let mut out = Vec::new();
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        let mut path = Vec::new();
        cycle_search(
            plane,
            &arcs,
            start,
            start,
            &mut on_path,
            &mut path,
            &mut out,
        );
    }
    out
}

fn cycle_search(
    plane: &PlaneBipartite,
    arcs: &[Vec<(usize, bool, usize)>],
    start: usize,
    node: usize,
    on_path: &mut [bool],
    path: &mut Vec<CycleStep>,
    out: &mut Vec<EnclosingCycle>,
) {
    for &(e, toward_y, target) in &arcs[node] {
        if path.iter().any(|&(f, _)| f == e) {
            continue;
        }
        if target == start {
            path.push((e, toward_y));
            let enclosed = left_of(plane, path);
            if !enclosed[plane.outer] {
                out.push(EnclosingCycle {
                    steps: path.clone(),
                    enclosed,
                });
            }
            path.pop();
        } else if target > start && !on_path[target] {
            on_path[target] = true;
            path.push((e, toward_y));
            cycle_search(plane, arcs, start, target, on_path, path, out);
            path.pop();
            on_path[target] = false;
        }
    }
}

/// Faces on the left of a directed simple cycle.
fn left_of(plane: &PlaneBipartite, steps: &[CycleStep]) -> Vec<bool> {
    let mut cut = vec![false; plane.graph.num_edges()];
    let mut seeds = Vec::with_capacity(steps.len());
    for &(e, toward_y) in steps {
        cut[e] = true;
        let (l, r) = plane.sides[e];
        seeds.push(if toward_y { l } else { r });
    }
    flood(plane, &seeds, &cut)
}

/// Minimality by exhaustive cycle search.
pub fn is_minimal_by_cycles(plane: &PlaneBipartite, flow: &[Rational]) -> bool {
    positive_ccw_cycles(plane, flow).is_empty()
}

/// Pushes a cycle: subtracts the least flow of its steps toward `X` from those
/// steps and adds it to its steps toward `Y`.
pub fn push_cycle(flow: &mut [Rational], steps: &[CycleStep]) {
    let amount = steps
        .iter()
        .filter(|s| !s.1)
        .map(|&(e, _)| flow[e])
        .min()
        .expect("a cycle has a step toward X");
    for &(e, toward_y) in steps {
        if toward_y {
            flow[e] += amount;
        } else {
            flow[e] -= amount;
        }
    }
}

/// Reference minimization: repeatedly pushes a positive counterclockwise cycle
/// enclosing the most faces until none is left.
pub fn minimize_by_cycle_pushing(plane: &PlaneBipartite, flow: &[Rational]) -> Hyperflow {
    let mut flow = flow.to_vec();
    loop {
        let cycles = positive_ccw_cycles(plane, &flow);
        let best = cycles.iter().max_by_key(|c| {
            (
                c.enclosed.iter().filter(|&&b| b).count(),
                Reverse(c.steps.clone()),
            )
        });
        match best {
            None => return flow,
            Some(c) => push_cycle(&mut flow, &c.steps),
        }
    }
}

/// Shortest distances from the outer face where edge `e` can be crossed from
/// its left face to its right face at cost `flow[e]`.
fn face_potential(plane: &PlaneBipartite, flow: &[Rational]) -> Vec<Rational> {
    let mut adj = vec![Vec::new(); plane.num_faces];
    for (e, &(l, r)) in plane.sides.iter().enumerate() {
        adj[l].push((r, flow[e]));
    }
    let mut dist: Vec<Option<Rational>> = vec![None; plane.num_faces];
    let mut heap = BinaryHeap::new();
    dist[plane.outer] = Some(zero());
    heap.push(Reverse((zero(), plane.outer)));
    while let Some(Reverse((d, f))) = heap.pop() {
        if dist[f] != Some(d) {
            continue;
        }
        for &(g, w) in &adj[f] {
            let nd = d + w;
            if dist[g].map_or(true, |old| nd < old) {
                dist[g] = Some(nd);
                heap.push(Reverse((nd, g)));
            }
        }
    }
    dist.into_iter().map(|d| d.unwrap_or_else(zero)).collect()
}

/// The unique minimal hyperflow with the same node totals as `flow`.
///
/// Two such hyperflows differ by a circulation, which in a plane graph is
/// given by a potential on faces: raising the potential of a face set moves
/// flow exactly as pushing the counterclockwise cycle around it. Pushes are
/// possible until the potential is the largest one keeping every edge
/// nonnegative, namely shortest distances from the outer face.
pub fn minimize_hyperflow(plane: &PlaneBipartite, flow: &[Rational]) -> Hyperflow {
    let p = face_potential(plane, flow);
    let out: Hyperflow = plane
        .sides
        .iter()
        .enumerate()
        .map(|(e, &(l, r))| flow[e] + p[l] - p[r])
        .collect();
    debug_assert!(out.iter().all(|v| *v >= zero()));
    out
}

/// Minimality in linear time: no face has positive distance from the outer face.
pub fn is_minimal(plane: &PlaneBipartite, flow: &[Rational]) -> bool {
    face_potential(plane, flow).iter().all(|p| *p == zero())
}

/// The orientation carried by a star-graph hyperflow: each hypermap edge
/// takes the value of the star edge in its dark corner, and is 1-way exactly
/// when that value is positive.
pub fn gamma(h: &Hypermap, flow: &[Rational]) -> Hyperorientation {
    let flags: Vec<bool> = flow.iter().map(|v| *v > zero()).collect();
    Hyperorientation::from_flags(h, &flags, flow.to_vec())
}

/// Inverse of [`gamma`] on orientations whose 1-way edges have positive
/// weight and whose 0-way edges have weight zero.
pub fn gamma_inverse(o: &Hyperorientation) -> Result<Hyperflow> {
    (0..o.num_edges())
        .map(|e| {
            let w = o.weight(e);
            match o.status(e) {
                EdgeStatus::OneWay(_) if w > zero() => Ok(w),
                EdgeStatus::ZeroWay if w == zero() => Ok(w),
                _ => Err(HypermapError::IllegalOrientation(format!(
                    "edge {e} has weight {w}, which no hyperflow produces"
                ))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{cycle_hypermap, loop_hypermap, Root};

    fn q(n: i128) -> Rational {
        Rational::from(n)
    }

    fn demand(x: &[i128], y: &[i128]) -> Demand {
        Demand {
            x: x.iter().map(|&v| q(v)).collect(),
            y: y.iter().map(|&v| q(v)).collect(),
        }
    }

    #[test]
    fn single_edge_carries_its_demand() {
        let g = BipartiteGraph::new(1, 1, vec![(0, 0)]);
        assert_eq!(
            find_alpha_hyperflow(&g, &demand(&[1], &[1])).unwrap(),
            vec![q(1)]
        );
    }

    #[test]
    fn star_flow_is_forced() {
        let g = BipartiteGraph::new(1, 2, vec![(0, 0), (0, 1)]);
        let a = demand(&[3], &[1, 2]);
        assert_eq!(find_alpha_hyperflow(&g, &a).unwrap(), vec![q(1), q(2)]);
        assert_eq!(check_existence_criterion(&g, &a), Ok(()));
    }

    #[test]
    fn mismatch_is_infeasible_with_certificate() {
        // Two components: x0-y0 and x1-y1 with swapped demands.
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 1)]);
        let a = demand(&[1, 2], &[2, 1]);
        match find_alpha_hyperflow(&g, &a) {
            Err(HypermapError::Infeasible { certificate }) => {
                let in_a: Vec<bool> = (0..2).map(|x| certificate.contains(&x)).collect();
                assert!(subset_balance(&g, &a, &in_a) < q(0));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert_eq!(check_existence_criterion(&g, &a), Err(vec![0]));
    }

    #[test]
    fn overloaded_y_is_witnessed_by_its_neighbours() {
        let g = BipartiteGraph::new(3, 2, vec![(0, 0), (1, 0), (1, 1), (2, 1)]);
        let a = demand(&[1, 2, 5], &[5, 3]);
        assert_eq!(check_existence_criterion(&g, &a), Err(vec![0, 1]));
        assert!(find_alpha_hyperflow(&g, &a).is_err());
    }

    #[test]
    fn loop_demand_and_gamma() {
        let h = loop_hypermap();
        let light = h.light_faces().next().unwrap();
        let dark = h.dark_faces().next().unwrap();
        let r = RootedHypermap::new(h.clone(), Root::LightFace(light)).unwrap();
        let mut c = Charge::zero(&h);
        c.vertex[0] = q(1);
        c.face[light] = q(1);
        c.face[dark] = q(-2);
        let a = alpha_demand(&r, &c).unwrap();
        assert_eq!(a, demand(&[1], &[1]));
        let s = star_graph(&h, light);
        let flow = find_alpha_hyperflow(s.graph(), &a).unwrap();
        let o = gamma(&h, &flow);
        assert!(o.is_one_way(0));
        assert_eq!(o.weight(0), q(1));
        assert_eq!(gamma_inverse(&o).unwrap(), flow);
        let z = gamma(&h, &[q(0)]);
        assert!(!z.is_one_way(0));
        assert_eq!(z.weight(0), q(0));
    }

    #[test]
    fn zero_demand_on_dark_face() {
        let h = cycle_hypermap(2);
        let light = h.light_faces().next().unwrap();
        let dark = h.dark_faces().next().unwrap();
        let r = RootedHypermap::new(h.clone(), Root::LightFace(light)).unwrap();
        let mut c = Charge::zero(&h);
        c.vertex = vec![q(1), q(1)];
        c.face[light] = q(2);
        c.face[dark] = q(-2);
        assert_eq!(alpha_demand(&r, &c).unwrap().y, vec![q(0)]);
        c.face[dark] = q(0);
        assert!(matches!(
            alpha_demand(&r, &c),
            Err(HypermapError::NegativeDemand(_))
        ));
    }

    #[test]
    fn minimal_flow_is_a_fixed_point() {
        let h = cycle_hypermap(3);
        let light = h.light_faces().next().unwrap();
        let s = star_graph(&h, light);
        let flow = vec![q(1), q(0), q(2)];
        let min = minimize_hyperflow(&s.plane, &flow);
        assert!(is_minimal(&s.plane, &min));
        assert_eq!(minimize_hyperflow(&s.plane, &min), min);
        assert_eq!(minimize_by_cycle_pushing(&s.plane, &min), min);
    }
}
