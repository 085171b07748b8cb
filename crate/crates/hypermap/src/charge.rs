//! Charge functions, light regions, the charge girth condition, fitting
//! tests, ingirth and annular girth statistics, and the standard charges
//! encoding girth constraints.

use crate::canonical::check_normalization;
use crate::error::{HypermapError, Result};
use crate::map::{Hypermap, RootKind, RootedHypermap};
use crate::Rational;

/// Largest face count accepted by the exhaustive region enumerations.
pub const DEFAULT_FACE_CAP: usize = 20;

fn q(n: i128) -> Rational {
    Rational::from(n)
}

/// A rational charge on every vertex and every face of a hypermap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    pub vertex: Vec<Rational>,
    pub face: Vec<Rational>,
}

impl Charge {
    /// The charge that is zero everywhere.
    pub fn zero(h: &Hypermap) -> Self {
        let m = h.map();
        Charge {
            vertex: vec![q(0); m.num_vertices()],
            face: vec![q(0); m.num_faces()],
        }
    }

    /// Sum of all vertex and face charges.
    pub fn total(&self) -> Rational {
        self.vertex.iter().chain(self.face.iter()).sum()
    }

    /// Whether every charge is an integer.
    pub fn is_integral(&self) -> bool {
        self.vertex
            .iter()
            .chain(self.face.iter())
            .all(|c| c.is_integer())
    }
}

/// Whether no dark face of `region` shares an edge with a face outside it.
pub fn is_light_region(h: &Hypermap, region: &[bool]) -> bool {
    let m = h.map();
    (0..m.num_edges()).all(|e| {
        let dark = m.face(h.dark_dart(e));
        let light = m.face(h.light_dart(e));
        !region[dark] || region[light]
    })
}

/// Boundary, interior and topology of a light region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionStats {
    /// Edges between a face of the region and a face outside it.
    pub boundary: Vec<usize>,
    /// Vertices all of whose incident faces lie in the region.
    pub inside_vertices: Vec<usize>,
    /// Edges both of whose faces lie in the region.
    pub inside_edges: Vec<usize>,
    pub connected: bool,
    pub simply_connected: bool,
}

impl RegionStats {
    pub fn boundary_size(&self) -> usize {
        self.boundary.len()
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Computes boundary, strictly inside cells and connectivity of a region.
/// The region together with its strictly inside edges and vertices is an open
/// subset of the sphere; it is simply connected exactly when it is connected
/// and its cell count `V - E + F` is 1.
pub fn region_stats(h: &Hypermap, region: &[bool]) -> Result<RegionStats> {
    let m = h.map();
    if region.len() != m.num_faces() {
        return Err(HypermapError::NotLightRegion(
            "one flag per face is required".into(),
        ));
    }
    let size = region.iter().filter(|&&b| b).count();
    if size == m.num_faces() {
        return Err(HypermapError::NotLightRegion(
            "the region must be a proper subset of the faces".into(),
        ));
    }
    if !is_light_region(h, region) {
        return Err(HypermapError::NotLightRegion(
            "a dark face of the region touches the outside".into(),
        ));
    }
    let mut boundary = Vec::new();
    let mut inside_edges = Vec::new();
    let mut parent: Vec<usize> = (0..m.num_faces()).collect();
    for e in 0..m.num_edges() {
        let [a, b] = m.edge_darts(e);
        let (fa, fb) = (m.face(a), m.face(b));
        match (region[fa], region[fb]) {
            (true, true) => {
                inside_edges.push(e);
                let (ra, rb) = (find(&mut parent, fa), find(&mut parent, fb));
                parent[ra] = rb;
            }
            (true, false) | (false, true) => boundary.push(e),
            (false, false) => {}
        }
    }
    let mut inside_vertices = Vec::new();
    for v in 0..m.num_vertices() {
        let darts = m.vertex_darts(v);
        if darts.iter().all(|&d| region[m.face(d)]) {
            inside_vertices.push(v);
            let first = find(&mut parent, m.face(darts[0]));
            for &d in darts {
                let r = find(&mut parent, m.face(d));
                parent[r] = first;
            }
        }
    }
    let faces: Vec<usize> = (0..m.num_faces()).filter(|&f| region[f]).collect();
    let roots: std::collections::BTreeSet<usize> =
        faces.iter().map(|&f| find(&mut parent, f)).collect();
    let connected = roots.len() == 1;
    let euler = inside_vertices.len() as i64 - inside_edges.len() as i64 + faces.len() as i64;
    Ok(RegionStats {
        boundary,
        inside_vertices,
        inside_edges,
        connected,
        simply_connected: connected && euler == 1,
    })
}

/// Charge of a region: its faces plus its strictly inside vertices.
pub fn region_charge(region: &[bool], stats: &RegionStats, charge: &Charge) -> Rational {
    let faces: Rational = region
        .iter()
        .zip(&charge.face)
        .filter(|(&r, _)| r)
        .map(|(_, c)| *c)
        .sum();
    let vertices: Rational = stats
        .inside_vertices
        .iter()
        .map(|&v| charge.vertex[v])
        .sum();
    faces + vertices
}

/// Every nonempty light region of `h` with its statistics.
pub fn light_regions(h: &Hypermap) -> Vec<(Vec<bool>, RegionStats)> {
    let nf = h.map().num_faces();
    assert!(
        nf <= DEFAULT_FACE_CAP,
        "region enumeration is limited to {DEFAULT_FACE_CAP} faces"
    );
    (1u32..(1u32 << nf) - 1)
        .filter_map(|mask| {
            let region: Vec<bool> = (0..nf).map(|f| mask >> f & 1 == 1).collect();
            if !is_light_region(h, &region) {
                return None;
            }
            let stats = region_stats(h, &region).expect("light region");
            Some((region, stats))
        })
        .collect()
}

/// Which regions the girth check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionScope {
    All,
    SimplyConnected,
}

/// Whether the inequality must be strict for this region, by root kind: all
/// outer vertices inside for a dark root, an outer edge inside for a light
/// root, the root vertex inside for a vertex root.
fn strict_for(r: &RootedHypermap, stats: &RegionStats) -> bool {
    match r.kind() {
        RootKind::Dark => r
            .outer_vertices()
            .iter()
            .all(|v| stats.inside_vertices.binary_search(v).is_ok()),
        RootKind::Light => r
            .outer_edges()
            .iter()
            .any(|e| stats.inside_edges.binary_search(e).is_ok()),
        RootKind::Vertex => {
            let v0 = r.root_vertex().expect("vertex root");
            stats.inside_vertices.binary_search(&v0).is_ok()
        }
    }
}

/// A light region violating the charge girth condition, among the regions of
/// the given scope, as the list of its faces.
pub fn girth_violation(
    r: &RootedHypermap,
    charge: &Charge,
    scope: RegionScope,
) -> Option<Vec<usize>> {
    for (region, stats) in light_regions(r.hypermap()) {
        if scope == RegionScope::SimplyConnected && !stats.simply_connected {
            continue;
        }
        let size = q(stats.boundary_size() as i128);
        let sigma = region_charge(&region, &stats, charge);
        let ok = if strict_for(r, &stats) {
            size > sigma
        } else {
            size >= sigma
        };
        if !ok {
            return Some((0..region.len()).filter(|&f| region[f]).collect());
        }
    }
    None
}

/// The charge girth condition. With total charge zero only simply connected
/// regions need checking; otherwise every region is checked.
pub fn sigma_girth_check(
    r: &RootedHypermap,
    charge: &Charge,
) -> std::result::Result<(), Vec<usize>> {
    let scope = if charge.total() == q(0) {
        RegionScope::SimplyConnected
    } else {
        RegionScope::All
    };
    match girth_violation(r, charge, scope) {
        Some(region) => Err(region),
        None => Ok(()),
    }
}

/// Whether `charge` fits `r`: the sign and normalization conditions of its
/// root kind together with the girth condition.
pub fn fits(r: &RootedHypermap, charge: &Charge) -> bool {
    check_normalization(r, charge).is_ok() && sigma_girth_check(r, charge).is_ok()
}

/// Whether the boundary edges of a region form one simple cycle.
fn boundary_is_simple_cycle(h: &Hypermap, boundary: &[usize]) -> bool {
    let m = h.map();
    if boundary.is_empty() {
        return false;
    }
    let mut degree = vec![0usize; m.num_vertices()];
    let mut parent: Vec<usize> = (0..m.num_vertices()).collect();
    for &e in boundary {
        let [a, b] = m.edge_darts(e);
        let (u, v) = (m.vertex(a), m.vertex(b));
        degree[u] += 1;
        degree[v] += 1;
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru] = rv;
    }
    let touched: Vec<usize> = (0..m.num_vertices()).filter(|&v| degree[v] > 0).collect();
    let root = find(&mut parent, touched[0]);
    touched
        .iter()
        .all(|&v| degree[v] == 2 && find(&mut parent, v) == root)
}

/// Length of the shortest inward cycle: the least boundary size of a simply
/// connected light region avoiding the outer face whose boundary is a simple
/// cycle. `None` when there is no such region.
pub fn ingirth(r: &RootedHypermap) -> Option<usize> {
    let f0 = r.root_face().expect("ingirth needs a face root");
    let h = r.hypermap();
    light_regions(h)
        .into_iter()
        .filter(|(region, stats)| {
            !region[f0] && stats.simply_connected && boundary_is_simple_cycle(h, &stats.boundary)
        })
        .map(|(_, stats)| stats.boundary_size())
        .min()
}

/// A face-rooted hypermap with a second marked inner face.
#[derive(Clone, Debug)]
pub struct AnnularHypermap {
    pub rooted: RootedHypermap,
    pub marked: usize,
}

impl AnnularHypermap {
    pub fn new(rooted: RootedHypermap, marked: usize) -> Result<Self> {
        let f0 = rooted
            .root_face()
            .filter(|_| rooted.kind() != RootKind::Vertex)
            .ok_or_else(|| {
                HypermapError::InvalidRoot("an annular hypermap needs a face root".into())
            })?;
        if marked == f0 || marked >= rooted.map().num_faces() {
            return Err(HypermapError::InvalidRoot(
                "the marked face must be an inner face".into(),
            ));
        }
        Ok(AnnularHypermap { rooted, marked })
    }

    pub fn outer(&self) -> usize {
        self.rooted.root_face().expect("face root")
    }
}

/// The three girth statistics of an annular hypermap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnnularGirths {
    /// Least boundary of a light region containing the marked face but not the outer face.
    pub separating_ingirth: Option<usize>,
    /// Least boundary of a light region containing the outer face but not the marked face.
    pub separating_outgirth: Option<usize>,
    /// Least boundary of a simply connected light region containing neither.
    pub non_separating_ingirth: Option<usize>,
}

pub fn annular_girths(a: &AnnularHypermap) -> AnnularGirths {
    let (f0, f1) = (a.outer(), a.marked);
    let mut out = AnnularGirths {
        separating_ingirth: None,
        separating_outgirth: None,
        non_separating_ingirth: None,
    };
    let lower =
        |slot: &mut Option<usize>, x: usize| *slot = Some(slot.map_or(x, |y: usize| y.min(x)));
    for (region, stats) in light_regions(a.rooted.hypermap()) {
        let size = stats.boundary_size();
        match (region[f0], region[f1]) {
            (false, true) => lower(&mut out.separating_ingirth, size),
            (true, false) => lower(&mut out.separating_outgirth, size),
            (false, false) if stats.simply_connected => {
                lower(&mut out.non_separating_ingirth, size)
            }
            _ => {}
        }
    }
    out
}

/// Boundary lengths of the light regions containing the outer face but not
/// the marked face whose boundary is a simple cycle.
pub fn separating_outward_cycles(a: &AnnularHypermap) -> Vec<usize> {
    let h = a.rooted.hypermap();
    light_regions(h)
        .into_iter()
        .filter(|(region, stats)| {
            region[a.outer()] && !region[a.marked] && boundary_is_simple_cycle(h, &stats.boundary)
        })
        .map(|(_, stats)| stats.boundary_size())
        .collect()
}

fn degree(h: &Hypermap, f: usize) -> Rational {
    q(h.map().face_degree(f) as i128)
}

/// The charge with value `d` on vertices and light faces and `d - d deg(f)`
/// on dark faces; every simply connected light region has charge `d`.
pub fn sigma_d(h: &Hypermap, d: Rational) -> Charge {
    let m = h.map();
    let mut c = Charge::zero(h);
    c.vertex = vec![d; m.num_vertices()];
    for f in 0..m.num_faces() {
        c.face[f] = if h.is_dark_face(f) {
            d - d * degree(h, f)
        } else {
            d
        };
    }
    c
}

/// The charge of a dark-rooted hypermap that fits exactly when the ingirth
/// is `d` (for outer degree `d`): `sigma_d` with zero on outer vertices and
/// `-d` on the outer face.
pub fn ingirth_charge(r: &RootedHypermap, d: i128) -> Charge {
    let f0 = r.root_face().expect("dark root");
    let mut c = sigma_d(r.hypermap(), q(d));
    for v in r.outer_vertices() {
        c.vertex[v] = q(0);
    }
    c.face[f0] = q(-d);
    c
}

/// Charge for a dark outer face of degree `e` and a marked inner face, fitting
/// exactly when the non-separating ingirth is at least `d` and the separating
/// ingirth is `e`.
pub fn annular_dark_charge(a: &AnnularHypermap, d: i128, e: i128) -> Charge {
    let h = a.rooted.hypermap();
    let mut c = ingirth_charge(&a.rooted, d);
    c.face[a.outer()] = q(-e);
    let f1 = a.marked;
    c.face[f1] = if h.is_dark_face(f1) {
        q(e) - q(d) * degree(h, f1)
    } else {
        q(e)
    };
    c
}

/// Charge for a light outer face of degree `e` and a marked inner face,
/// fitting exactly when the non-separating ingirth is at least `d`, the
/// separating outgirth is `e`, and the outer contour is the only separating
/// outward cycle of length `e`.
pub fn annular_light_charge(a: &AnnularHypermap, d: i128, e: i128) -> Charge {
    let h = a.rooted.hypermap();
    let mut c = sigma_d(h, q(d));
    c.face[a.outer()] = q(e);
    let f1 = a.marked;
    c.face[f1] = if h.is_dark_face(f1) {
        q(-e) - q(d) * degree(h, f1)
    } else {
        q(-e)
    };
    c
}

/// Extends a charge on the vertices of a map, seen as a hypermap whose dark
/// faces are its edges, by `-2` on edges and `2` on faces.
pub fn embed_partial_charge(h: &Hypermap, vertex: &[Rational]) -> Charge {
    let m = h.map();
    let mut c = Charge::zero(h);
    c.vertex = vertex.to_vec();
    for f in 0..m.num_faces() {
        c.face[f] = if h.is_dark_face(f) { q(-2) } else { q(2) };
    }
    c
}

/// Whether every dark face has degree 2, so that the hypermap is a map.
pub fn is_map(h: &Hypermap) -> bool {
    h.dark_faces().all(|f| h.map().face_degree(f) == 2)
}

/// The fitting conditions for a vertex charge on a vertex-rooted map, read on
/// the map itself: the root has charge 0, other vertices are positive, the
/// charges add up to `2|V| - 4`, and every set of map faces forming a simply
/// connected region has at least `2 + sum (charge(v) - 2)` boundary edges over
/// its inside vertices, strictly when the root is inside.
pub fn partial_charge_fits(r: &RootedHypermap, vertex: &[Rational]) -> bool {
    let h = r.hypermap();
    assert!(is_map(h), "partial charges live on maps");
    let m = h.map();
    let v0 = r.root_vertex().expect("vertex root");
    let nv = m.num_vertices();
    if vertex[v0] != q(0) || (0..nv).any(|v| v != v0 && vertex[v] <= q(0)) {
        return false;
    }
    if vertex.iter().sum::<Rational>() != q(2 * nv as i128 - 4) {
        return false;
    }
    // Map faces are the light faces; map edges are the dark digons, each
    // joining the light faces across its two hypermap edges.
    let faces: Vec<usize> = h.light_faces().collect();
    let digons: Vec<(usize, usize)> = h
        .dark_faces()
        .map(|f| {
            let [a, b] = [m.face_darts(f)[0], m.face_darts(f)[1]];
            (m.face(m.alpha(a)), m.face(m.alpha(b)))
        })
        .collect();
    let nf = faces.len();
    for mask in 1u32..(1u32 << nf) {
        let mut in_r = vec![false; m.num_faces()];
        for (i, &f) in faces.iter().enumerate() {
            in_r[f] = mask >> i & 1 == 1;
        }
        let inside_edges: Vec<&(usize, usize)> = digons
            .iter()
            .filter(|(a, b)| in_r[*a] && in_r[*b])
            .collect();
        let boundary = digons.iter().filter(|(a, b)| in_r[*a] != in_r[*b]).count();
        let inside_vertices: Vec<usize> = (0..nv)
            .filter(|&v| {
                m.vertex_darts(v)
                    .iter()
                    .all(|&d| h.is_dark_dart(d) || in_r[m.face(d)])
            })
            .collect();
        // Connectivity through inside edges and inside vertices.
        let mut parent: Vec<usize> = (0..m.num_faces()).collect();
        for &&(a, b) in &inside_edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        for &v in &inside_vertices {
            let light: Vec<usize> = m
                .vertex_darts(v)
                .iter()
                .filter(|&&d| !h.is_dark_dart(d))
                .map(|&d| m.face(d))
                .collect();
            for &f in &light {
                let (ra, rb) = (find(&mut parent, f), find(&mut parent, light[0]));
                parent[ra] = rb;
            }
        }
        let chosen: Vec<usize> = faces.iter().copied().filter(|&f| in_r[f]).collect();
        let root = find(&mut parent, chosen[0]);
        let connected = chosen.iter().all(|&f| find(&mut parent, f) == root);
        let euler = inside_vertices.len() as i64 - inside_edges.len() as i64 + chosen.len() as i64;
        if !connected || euler != 1 {
            continue;
        }
        let bound: Rational = q(2)
            + inside_vertices
                .iter()
                .map(|&v| vertex[v] - q(2))
                .sum::<Rational>();
        let size = q(boundary as i128);
        let strict = inside_vertices.contains(&v0);
        if (strict && size <= bound) || (!strict && size < bound) {
            return false;
        }
    }
    true
}
