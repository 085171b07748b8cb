//! Exhaustive counts of corner-rooted hypermaps by face-degree profile, for
//! comparison with generating functions.
//!
//! Counting is done on labelled objects. A hypermap with `m` edges is a pair
//! of permutations of the edge labels: the dark face permutation and the
//! light face permutation. Relabelings act freely on corner-rooted hypermaps,
//! so the number of rooted hypermaps is the number of labelled rooted ones
//! divided by `m!`. Fixing the dark permutation to one representative of its
//! cycle type `mu` and running over every light permutation of type `nu`
//! therefore counts each rooted hypermap `z_mu` times, where `z_mu` is the
//! centralizer order of `mu`.

use std::collections::BTreeMap;

use crate::charge::{annular_girths, ingirth, separating_outward_cycles, AnnularHypermap};
use crate::map::{Color, Hypermap, Root, RootedHypermap};
use crate::mobile::{Hypermobile, NodeKind, Profile};
use crate::oracle::{block_permutation, enumerate_hypermobiles, glue, partitions};

/// Numbers of counted faces by color and degree: entry `k - 1` counts faces
/// of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeProfile {
    pub light: Vec<u32>,
    pub dark: Vec<u32>,
}

impl DegreeProfile {
    pub fn empty(cap: usize) -> Self {
        DegreeProfile {
            light: vec![0; cap],
            dark: vec![0; cap],
        }
    }

    /// Number of counted faces.
    pub fn grade(&self) -> usize {
        self.light
            .iter()
            .chain(&self.dark)
            .map(|&e| e as usize)
            .sum()
    }

    /// The profile of two disjoint face sets together.
    pub fn plus(&self, other: &DegreeProfile) -> DegreeProfile {
        let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        DegreeProfile {
            light: add(&self.light, &other.light),
            dark: add(&self.dark, &other.dark),
        }
    }
}

/// Count of rooted objects per profile.
pub type ProfileCounts = BTreeMap<DegreeProfile, u128>;

/// Which faces are counted: at most `max_grade` of them, each of degree at
/// most `cap`, in hypermaps with at most `max_edges` edges when set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountSpec {
    pub max_grade: usize,
    pub cap: usize,
    pub max_edges: Option<usize>,
}

impl CountSpec {
    pub fn new(max_grade: usize, cap: usize) -> Self {
        CountSpec {
            max_grade,
            cap,
            max_edges: None,
        }
    }

    /// Every hypermap with at most `edges` edges: faces number at most
    /// `edges + 1` and have degree at most `edges`.
    pub fn up_to_edges(edges: usize) -> Self {
        CountSpec {
            max_grade: edges,
            cap: edges,
            max_edges: Some(edges),
        }
    }
}

/// The annular families, by the roles of their two distinguished faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnularFamily {
    /// Separating ingirth `e` and non-separating ingirth at least `d`, with
    /// the outer face and the marked face of the given color and degree.
    Full {
        outer: (Color, usize),
        marked: (Color, usize),
    },
    /// Dark outer face of degree `e`, separating ingirth `e`, non-separating
    /// ingirth at least `d`.
    DarkOuter { marked: (Color, usize) },
    /// Light outer face of degree `e`, separating outgirth `e`, non-separating
    /// ingirth at least `d`, and no separating outward cycle of length `e`
    /// other than the outer contour.
    LightOuter { marked: (Color, usize) },
}

/// Order of the centralizer of a permutation of cycle type `parts`.
fn centralizer_order(parts: &[usize]) -> u128 {
    let mut multiplicity: BTreeMap<usize, u128> = BTreeMap::new();
    for &p in parts {
        *multiplicity.entry(p).or_insert(0) += 1;
    }
    multiplicity
        .into_iter()
        .map(|(p, a)| (p as u128).pow(a as u32) * (1..=a).product::<u128>())
        .product()
}

/// Visits every permutation of `0..n` with cycle type `parts`, once each: the
/// cycle through the least unused element takes each available length in turn.
pub fn for_each_permutation_of_type(parts: &[usize], mut visit: impl FnMut(&[usize])) {
    let n: usize = parts.iter().sum();
    let mut remaining: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        *remaining.entry(p).or_insert(0) += 1;
    }
    let mut perm = vec![usize::MAX; n];
    fn fill(
        perm: &mut Vec<usize>,
        remaining: &mut BTreeMap<usize, usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let Some(start) = perm.iter().position(|&p| p == usize::MAX) else {
            visit(perm);
            return;
        };
        let lengths: Vec<usize> = remaining
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&p, _)| p)
            .collect();
        for len in lengths {
            *remaining.get_mut(&len).expect("listed") -= 1;
            let mut cycle = vec![start];
            extend_cycle(perm, remaining, &mut cycle, len, visit);
            *remaining.get_mut(&len).expect("listed") += 1;
        }
    }
    fn extend_cycle(
        perm: &mut Vec<usize>,
        remaining: &mut BTreeMap<usize, usize>,
        cycle: &mut Vec<usize>,
        len: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if cycle.len() == len {
            for i in 0..len {
                perm[cycle[i]] = cycle[(i + 1) % len];
            }
            fill(perm, remaining, visit);
            for &c in cycle.iter() {
                perm[c] = usize::MAX;
            }
            return;
        }
        let start = cycle[0];
        for next in start + 1..perm.len() {
            if perm[next] == usize::MAX && !cycle.contains(&next) {
                cycle.push(next);
                extend_cycle(perm, remaining, cycle, len, visit);
                cycle.pop();
            }
        }
    }
    fill(&mut perm, &mut remaining, &mut visit);
}

/// Runs `visit` on every planar hypermap whose dark faces have cycle type
/// `dark` (fixed representative) and light faces cycle type `light` (all
/// labellings). Returns `z_dark`, the multiplicity of each rooted hypermap.
fn for_each_labelled(dark: &[usize], light: &[usize], mut visit: impl FnMut(&Hypermap)) -> u128 {
    let dark_next = block_permutation(dark);
    let identity: Vec<usize> = (0..dark_next.len()).collect();
    for_each_permutation_of_type(light, |light_next| {
        if let Some(h) = glue(&dark_next, light_next, &identity) {
            visit(&h);
        }
    });
    centralizer_order(dark)
}

/// Profile of the faces of `h` other than `excluded`, if they all have degree
/// at most `cap` and there are at most `max_grade` of them.
fn profile_without(h: &Hypermap, excluded: &[usize], spec: CountSpec) -> Option<DegreeProfile> {
    let m = h.map();
    let mut p = DegreeProfile::empty(spec.cap);
    for f in (0..m.num_faces()).filter(|f| !excluded.contains(f)) {
        let k = m.face_degree(f);
        if k > spec.cap {
            return None;
        }
        if h.is_dark_face(f) {
            p.dark[k - 1] += 1;
        } else {
            p.light[k - 1] += 1;
        }
    }
    (p.grade() <= spec.max_grade).then_some(p)
}

/// Pairs of dark and light cycle types worth generating: parts within the
/// cap except for `exempt` parts (distinguished faces), and few enough faces.
fn cycle_type_pairs(
    spec: CountSpec,
    distinguished: &[(Color, usize)],
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let faces = spec.max_grade + distinguished.len();
    let bound = |c: Color| {
        spec.cap * spec.max_grade
            + distinguished
                .iter()
                .filter(|(col, _)| *col == c)
                .map(|&(_, k)| k)
                .sum::<usize>()
    };
    let max_edges = bound(Color::Dark)
        .min(bound(Color::Light))
        .min(spec.max_edges.unwrap_or(usize::MAX));
    let fits = |parts: &[usize], color: Color| {
        let mut rest = parts.to_vec();
        for &(_, k) in distinguished.iter().filter(|(c, _)| *c == color) {
            match rest.iter().position(|&p| p == k) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        rest.iter().all(|&p| p <= spec.cap)
    };
    let mut out = Vec::new();
    for m in 1..=max_edges {
        let parts = partitions(m);
        for dark in parts.iter().filter(|p| fits(p, Color::Dark)) {
            for light in parts.iter().filter(|p| fits(p, Color::Light)) {
                // Planarity needs at least one vertex: m + 2 - F >= 1.
                let f = dark.len() + light.len();
                if f <= faces && f <= m + 1 {
                    out.push((dark.clone(), light.clone()));
                }
            }
        }
    }
    out
}

fn add_count(counts: &mut ProfileCounts, p: DegreeProfile, labelled: u128, multiplicity: u128) {
    assert_eq!(
        labelled % multiplicity,
        0,
        "labelled count not divisible by the centralizer order"
    );
    if labelled > 0 {
        *counts.entry(p).or_insert(0) += labelled / multiplicity;
    }
}

/// Corner-rooted hypermaps with a dark root face of degree `d` and ingirth
/// `d`, counted by their inner faces.
pub fn count_plane(d: usize, spec: CountSpec) -> ProfileCounts {
    count_dark_rooted(d, spec, |_, _| true, |r| ingirth(r) == Some(d))
}

/// Corner-rooted `p`-constellations (dark faces of degree `p`, light faces of
/// degree a multiple of `p`), counted by their faces other than the root
/// face. No girth condition is imposed.
pub fn count_constellations(p: usize, spec: CountSpec) -> ProfileCounts {
    let is_constellation = |dark: &[usize], light: &[usize]| {
        dark.iter().all(|&k| k == p) && light.iter().all(|&k| k % p == 0)
    };
    count_dark_rooted(p, spec, is_constellation, |_| true)
}

/// Corner-rooted hypermaps with a dark root face of degree `d`, restricted to
/// cycle types accepted by `types` and rooted hypermaps accepted by `keep`.
fn count_dark_rooted(
    d: usize,
    spec: CountSpec,
    types: impl Fn(&[usize], &[usize]) -> bool,
    keep: impl Fn(&RootedHypermap) -> bool,
) -> ProfileCounts {
    let mut counts = ProfileCounts::new();
    for (dark, light) in cycle_type_pairs(spec, &[(Color::Dark, d)]) {
        if !types(&dark, &light) {
            continue;
        }
        let mut labelled: BTreeMap<DegreeProfile, u128> = BTreeMap::new();
        let z = for_each_labelled(&dark, &light, |h| {
            let m = h.map();
            for f in h.dark_faces().filter(|&f| m.face_degree(f) == d) {
                let Some(p) = profile_without(h, &[f], spec) else {
                    continue;
                };
                let r = RootedHypermap::new(h.clone(), Root::DarkFace(f)).expect("dark face");
                if keep(&r) {
                    *labelled.entry(p).or_insert(0) += d as u128;
                }
            }
        });
        for (p, n) in labelled {
            add_count(&mut counts, p, n, z);
        }
    }
    counts
}

fn face_root(h: &Hypermap, f: usize) -> Root {
    if h.is_dark_face(f) {
        Root::DarkFace(f)
    } else {
        Root::LightFace(f)
    }
}

/// Corner-rooted annular hypermaps of the family, with corners marked in the
/// outer face and in the marked face, counted by their other faces.
pub fn count_annular(d: usize, e: usize, family: AnnularFamily, spec: CountSpec) -> ProfileCounts {
    let (outer, marked) = match family {
        AnnularFamily::Full { outer, marked } => (outer, marked),
        AnnularFamily::DarkOuter { marked } => ((Color::Dark, e), marked),
        AnnularFamily::LightOuter { marked } => ((Color::Light, e), marked),
    };
    let color_of = |h: &Hypermap, f: usize| {
        if h.is_dark_face(f) {
            Color::Dark
        } else {
            Color::Light
        }
    };
    let mut counts = ProfileCounts::new();
    for (dark, light) in cycle_type_pairs(spec, &[outer, marked]) {
        let mut labelled: BTreeMap<DegreeProfile, u128> = BTreeMap::new();
        let z = for_each_labelled(&dark, &light, |h| {
            let m = h.map();
            let faces = m.num_faces();
            for f0 in (0..faces).filter(|&f| (color_of(h, f), m.face_degree(f)) == outer) {
                for f1 in
                    (0..faces).filter(|&f| f != f0 && (color_of(h, f), m.face_degree(f)) == marked)
                {
                    let Some(p) = profile_without(h, &[f0, f1], spec) else {
                        continue;
                    };
                    let rooted =
                        RootedHypermap::new(h.clone(), face_root(h, f0)).expect("face root");
                    let a = AnnularHypermap::new(rooted, f1).expect("distinct faces");
                    let g = annular_girths(&a);
                    let non_separating_ok = g.non_separating_ingirth.is_none_or(|x| x >= d);
                    let ok = match family {
                        AnnularFamily::Full { .. } | AnnularFamily::DarkOuter { .. } => {
                            non_separating_ok && g.separating_ingirth == Some(e)
                        }
                        AnnularFamily::LightOuter { .. } => {
                            non_separating_ok
                                && g.separating_outgirth == Some(e)
                                && separating_outward_cycles(&a)
                                    .iter()
                                    .filter(|&&c| c == e)
                                    .count()
                                    == 1
                        }
                    };
                    if ok {
                        *labelled.entry(p).or_insert(0) += (outer.1 * marked.1) as u128;
                    }
                }
            }
        });
        for (p, n) in labelled {
            add_count(&mut counts, p, n, z);
        }
    }
    counts
}

/// The same counts as [`count_plane`], obtained from `d`-weighted
/// hypermobiles with at most `max_size` edges plus buds: each contributes its
/// number of distinct bud markings minus its number of distinct markings of
/// an edge with a round end, which is `d / |Aut|`. Complete for the profiles
/// of hypermaps with at most `(max_size + d) / 2` edges.
pub fn count_plane_by_mobiles(d: usize, max_size: usize, cap: usize) -> ProfileCounts {
    let mut counts = ProfileCounts::new();
    for size in 1..=max_size {
        for t in enumerate_hypermobiles(size, &Profile::DWeighted(d as i128)) {
            if t.excess() != -(d as i64) {
                continue;
            }
            let Some(p) = mobile_profile(&t, cap) else {
                continue;
            };
            let aut = t.automorphism_count() as u128;
            assert_eq!(
                d as u128 % aut,
                0,
                "automorphisms act freely on buds and round edges"
            );
            *counts.entry(p).or_insert(0) += d as u128 / aut;
        }
    }
    counts
}

/// Profile of the square nodes of a mobile, if all degrees are within `cap`.
fn mobile_profile(t: &Hypermobile, cap: usize) -> Option<DegreeProfile> {
    let mut p = DegreeProfile::empty(cap);
    for v in 0..t.num_nodes() {
        let k = t.degree(v);
        let slot = match t.kind(v) {
            NodeKind::Round => continue,
            NodeKind::LightSquare => &mut p.light,
            NodeKind::DarkSquare => &mut p.dark,
        };
        if k > cap {
            return None;
        }
        slot[k - 1] += 1;
    }
    Some(p)
}

/// Number of edges of the hypermaps with a given profile and dark root face
/// of degree `d`: the sum of the light face degrees.
pub fn edges_of_plane_profile(p: &DegreeProfile) -> usize {
    p.light
        .iter()
        .enumerate()
        .map(|(i, &n)| (i + 1) * n as usize)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    #[test]
    fn permutations_by_cycle_type() {
        for n in 1..=6 {
            let mut total = 0u128;
            for parts in partitions(n) {
                let mut count = 0u128;
                for_each_permutation_of_type(&parts, |p| {
                    let mut seen = vec![false; n];
                    for &x in p {
                        assert!(!seen[x]);
                        seen[x] = true;
                    }
                    count += 1;
                });
                assert_eq!(count, factorial(n as u128) / centralizer_order(&parts));
                total += count;
            }
            assert_eq!(total, factorial(n as u128));
        }
    }

    #[test]
    fn loop_hypermap_is_the_only_plane_count_with_one_light_face_of_degree_one() {
        let counts = count_plane(1, CountSpec::new(1, 2));
        let mut loop_profile = DegreeProfile::empty(2);
        loop_profile.light[0] = 1;
        assert_eq!(counts.get(&loop_profile), Some(&1));
    }
}
