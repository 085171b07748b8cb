//! Verification suites. Each one compares constructions against exhaustive
//! enumeration or against each other and returns a [`Report`] rather than
//! panicking, so that the command line and the acceptance run can print
//! results case by case.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use hypermap::bijection::{
    classify_by_tree, in_extended_class, oriented_key, outerplanar_word, phi, psi, psi_sprouts,
    sprout_word, PhiImage,
};
use hypermap::canonical::{canonical_orientation, canonical_vertex, d_weighted_orientation};
use hypermap::charge::{
    annular_dark_charge, annular_girths, annular_light_charge, embed_partial_charge, fits,
    girth_violation, ingirth, ingirth_charge, light_regions, partial_charge_fits, region_charge,
    separating_outward_cycles, sigma_d, sigma_girth_check, Charge, RegionScope,
};
use hypermap::counting::{
    count_annular, count_plane, count_plane_by_mobiles, edges_of_plane_profile, AnnularFamily,
    CountSpec, DegreeProfile, ProfileCounts,
};
use hypermap::mobile::{NodeKind, Profile, Slot};
use hypermap::oracle::{
    all_orientations, balanced_partial_charges, distinct_weight, enumerate_annular,
    enumerate_blossom_trees, enumerate_constellations, enumerate_hypermaps_up_to,
    enumerate_hypermobiles, enumerate_maps, enumerate_mobile_shapes, enumerate_rooted_hypermaps,
    enumerate_sigma_weighted_orientations, geodesic_orientation, rootings, small_charges,
    with_weights, zero_weighted_orientations, EnumerationSpec,
};
use hypermap::orientation::{classify, weight_report, Class, EdgeStatus, Engine, Hyperorientation};
use hypermap::{Color, HypermapError, Rational, Root, RootKind, RootedHypermap};
use hyperseries::{
    solve_wl, AnnularSeries, Atom, FaceColor, Monomial, Poly, PolySystem, SymbolicSystem,
    TruncatedSeries,
};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

/// Failures beyond this many are counted but not listed.
const LISTED_FAILURES: usize = 20;

/// Outcome of one suite: how many cases were checked, which failed, and
/// free-form lines such as comparison tables.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            ..Report::default()
        }
    }

    /// Records one case, described by `describe` if it failed.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(describe());
        }
    }

    /// Records a failure that is not tied to a counted case.
    pub fn fail(&mut self, message: String) {
        self.failed += 1;
        if self.failures.len() < LISTED_FAILURES {
            self.failures.push(message);
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// A suite passes when it checked something and nothing failed.
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: PASS ({} cases)", self.name, self.cases)
        } else if self.cases == 0 && self.failed == 0 {
            format!("{}: FAIL (no cases checked)", self.name)
        } else {
            format!(
                "{}: FAIL ({} failures in {} cases)",
                self.name, self.failed, self.cases
            )
        }
    }

    /// The summary followed by the listed failures and the notes.
    pub fn render(&self) -> String {
        let mut out = self.summary();
        out.push('\n');
        for f in &self.failures {
            let _ = writeln!(out, "  failure: {f}");
        }
        if self.failed > self.failures.len() {
            let _ = writeln!(
                out,
                "  ... {} more failures",
                self.failed - self.failures.len()
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "  {n}");
        }
        out
    }
}

fn q(n: i128) -> Rational {
    Rational::from(n)
}

fn class_of_root(kind: RootKind) -> Class {
    match kind {
        RootKind::Light => Class::InHPlus,
        RootKind::Dark => Class::InHMinus,
        RootKind::Vertex => Class::InHZero,
    }
}

// ---------------------------------------------------------------------------
// Bijection round trips
// ---------------------------------------------------------------------------

type FaceData = Vec<(bool, usize, Rational)>;
type VertexData = Vec<(usize, Rational)>;

/// Faces and vertices of an oriented hypermap that survive in its mobile,
/// paired with the square and round nodes of the mobile, all sorted.
fn parameter_multisets(
    r: &RootedHypermap,
    o: &Hyperorientation,
    img: &PhiImage,
) -> ((FaceData, FaceData), (VertexData, VertexData)) {
    let h = r.hypermap();
    let m = h.map();
    let report = weight_report(h, o);
    let t = &img.mobile;
    let mut faces: Vec<_> = (0..m.num_faces())
        .filter(|&f| img.face_node[f].is_some())
        .map(|f| (h.is_dark_face(f), m.face_degree(f), report.face[f]))
        .collect();
    let mut squares: Vec<_> = (0..t.num_nodes())
        .filter(|&v| t.kind(v) != NodeKind::Round)
        .map(|v| (t.kind(v) == NodeKind::DarkSquare, t.degree(v), t.weight(v)))
        .collect();
    let mut indegree = vec![0usize; m.num_vertices()];
    for e in 0..m.num_edges() {
        if let EdgeStatus::OneWay(tail) = o.status(e) {
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
    ((faces, squares), (vertices, rounds))
}

/// Checks one oriented rooted hypermap of the class of its root. Returns a
/// description of the first broken property.
fn check_oriented(r: &RootedHypermap, o: &Hyperorientation) -> Result<(), String> {
    let img = phi(r, o).map_err(|e| format!("phi failed: {e}"))?;
    let excess = img.mobile.excess();
    let outer = r.root_face().map_or(0, |f| r.map().face_degree(f) as i64);
    let expected = match r.kind() {
        RootKind::Light => outer,
        RootKind::Dark => -outer,
        RootKind::Vertex => 0,
    };
    if excess != expected {
        return Err(format!("excess {excess}, expected {expected}"));
    }
    let ((faces, squares), (vertices, rounds)) = parameter_multisets(r, o, &img);
    if faces != squares {
        return Err("faces and square nodes differ".into());
    }
    if vertices != rounds {
        return Err("vertices and round nodes differ".into());
    }
    let key = oriented_key(r, o);
    let (back, bo) = psi(&img.mobile).map_err(|e| format!("psi failed: {e}"))?;
    if oriented_key(&back, &bo) != key {
        return Err("psi(phi(X)) differs from X".into());
    }
    let (back, bo) = psi_sprouts(&img.mobile).map_err(|e| format!("sprout closure failed: {e}"))?;
    if oriented_key(&back, &bo) != key {
        return Err("sprout closure of phi(X) differs from X".into());
    }
    Ok(())
}

/// `psi(phi(X)) = X` with the excess law and parameter correspondences, for
/// every orientation in the class of its root on every face- or vertex-rooted
/// hypermap with at most `max_edges` edges; and `phi(psi(T)) = T` for every
/// mobile with at most `max_mobile_size` edges plus buds.
pub fn roundtrip(max_edges: usize, max_mobile_size: usize) -> Report {
    let mut report = Report::new(format!(
        "round trips (maps up to {max_edges} edges, mobiles up to size {max_mobile_size})"
    ));
    let mut oriented = 0;
    for r in enumerate_rooted_hypermaps(&EnumerationSpec::face_and_vertex_rooted(max_edges)) {
        for o in all_orientations(r.hypermap(), distinct_weight) {
            let class = classify(&r, &o, Engine::DualReachability);
            let describe = |what: &str| format!("{what}:\n{}", describe_oriented(&r, &o));
            if class != classify(&r, &o, Engine::CircuitEnumeration) {
                report.fail(describe("minimality engines disagree"));
            }
            if in_extended_class(&r, &o) && class != classify_by_tree(&r, &o) {
                report.fail(describe("tree criterion disagrees"));
            }
            if class == Class::None {
                continue;
            }
            let outcome = check_oriented(&r, &o);
            report.check(outcome.is_ok(), || describe(&outcome.unwrap_err()));
            oriented += 1;
        }
    }
    let mut mobiles = 0;
    for size in 1..=max_mobile_size {
        for shape in enumerate_mobile_shapes(size) {
            let t = with_weights(&shape, distinct_weight);
            let outcome = check_mobile(&t);
            report.check(outcome.is_ok(), || {
                format!("{}: {}", t.to_mob().trim(), outcome.unwrap_err())
            });
            mobiles += 1;
        }
    }
    report.note(format!(
        "{oriented} oriented rooted hypermaps, {mobiles} mobiles"
    ));
    report
}

fn check_mobile(t: &hypermap::mobile::Hypermobile) -> Result<(), String> {
    let word = outerplanar_word(t).map_err(|e| format!("outerplanar closure failed: {e}"))?;
    if !sprout_word(t).cyclically_equal(&word) {
        return Err("sprout and outerplanar closure words differ".into());
    }
    let (r, o) = psi(t).map_err(|e| format!("psi failed: {e}"))?;
    let (r2, o2) = psi_sprouts(t).map_err(|e| format!("sprout closure failed: {e}"))?;
    if oriented_key(&r, &o) != oriented_key(&r2, &o2) {
        return Err("the two closures disagree".into());
    }
    let expected = match t.excess().signum() {
        1 => Class::InHPlus,
        -1 => Class::InHMinus,
        _ => Class::InHZero,
    };
    let class = classify(&r, &o, Engine::DualReachability);
    if class != expected {
        return Err(format!("psi(T) is in {class:?}, expected {expected:?}"));
    }
    let img = phi(&r, &o).map_err(|e| format!("phi failed: {e}"))?;
    if img.mobile.canonical_form() != t.canonical_form() {
        return Err("phi(psi(T)) differs from T".into());
    }
    Ok(())
}

fn describe_oriented(r: &RootedHypermap, o: &Hyperorientation) -> String {
    let mut doc = hypermap::io::Document::new(r.clone());
    doc.orientation = Some(o.clone());
    doc.to_hmap()
}

// ---------------------------------------------------------------------------
// Existence and uniqueness of canonical orientations
// ---------------------------------------------------------------------------

/// For dark-rooted hypermaps with at most `max_edges` edges and root degree
/// `d` in `degrees`: ingirth `d` holds exactly when one `d`-weighted
/// orientation exists in the class of the root (brute force), and the flow
/// construction returns it.
pub fn d_weighted_uniqueness(max_edges: usize, degrees: &[usize]) -> Report {
    let mut report = Report::new(format!(
        "d-weighted orientations (dark roots, d in {degrees:?}, up to {max_edges} edges)"
    ));
    let spec = EnumerationSpec {
        max_edges,
        kinds: vec![RootKind::Dark],
        corners: false,
    };
    let mut stats = [0usize; 3];
    for r in enumerate_rooted_hypermaps(&spec) {
        let d = r.map().face_degree(r.root_face().expect("dark root"));
        if !degrees.contains(&d) {
            continue;
        }
        let charge = ingirth_charge(&r, d as i128);
        let found: Vec<_> = enumerate_sigma_weighted_orientations(&r, &charge)
            .into_iter()
            .filter(|(_, c)| *c == Class::InHMinus)
            .map(|(o, _)| o)
            .collect();
        let girth_ok = ingirth(&r) == Some(d);
        let simple = r.outer_face_is_simple();
        let describe = |what: String| format!("{what}:\n{}", describe_oriented_root(&r));
        let mut ok = fits(&r, &charge) == (girth_ok && simple);
        if simple {
            ok &= (found.len() == 1) == girth_ok && found.len() <= 1;
        }
        if !ok {
            report.fail(describe(format!(
                "ingirth {:?}, {} orientations found",
                ingirth(&r),
                found.len()
            )));
        }
        let outcome = match d_weighted_orientation(&r, d) {
            Ok(o) => {
                stats[0] += 1;
                girth_ok && simple && found.first() == Some(&o)
            }
            Err(HypermapError::IngirthMismatch { found: g, .. }) => {
                stats[1] += 1;
                simple && !girth_ok && g == ingirth(&r)
            }
            Err(HypermapError::OuterFaceNotSimple) => {
                stats[2] += 1;
                !simple
            }
            Err(_) => false,
        };
        report.check(outcome, || {
            describe("flow construction disagrees with brute force".into())
        });
    }
    report.note(format!(
        "{} with ingirth d, {} without, {} with a non-simple root face",
        stats[0], stats[1], stats[2]
    ));
    if stats[0] == 0 || stats[1] == 0 {
        report.fail("both outcomes should occur".into());
    }
    report
}

fn describe_oriented_root(r: &RootedHypermap) -> String {
    hypermap::io::Document::new(r.clone()).to_hmap()
}

/// For small integer charges on face- and vertex-rooted hypermaps with at
/// most `max_edges` edges and `max_faces` faces: a charge fits exactly when
/// one charge-weighted orientation exists in the class of the root (brute
/// force), and the flow construction returns it.
pub fn charge_uniqueness(max_edges: usize, max_faces: usize) -> Report {
    let mut report = Report::new(format!(
        "charge-weighted orientations (all root kinds, up to {max_edges} edges and {max_faces} faces)"
    ));
    let mut counts = [0usize; 2];
    for r in enumerate_rooted_hypermaps(&EnumerationSpec::face_and_vertex_rooted(max_edges)) {
        if r.map().num_faces() > max_faces
            || (r.kind() == RootKind::Dark && !r.outer_face_is_simple())
        {
            continue;
        }
        let class = class_of_root(r.kind());
        for charge in small_charges(&r) {
            let found: Vec<_> = enumerate_sigma_weighted_orientations(&r, &charge)
                .into_iter()
                .filter(|(_, c)| *c == class)
                .map(|(o, _)| o)
                .collect();
            let fit = fits(&r, &charge);
            let ok = match canonical_orientation(&r, &charge) {
                Ok(o) => {
                    counts[0] += 1;
                    fit && found == [o]
                }
                Err(HypermapError::NotFitting(_)) => {
                    counts[1] += 1;
                    !fit && found.is_empty()
                }
                Err(_) => false,
            };
            report.check(ok, || {
                let mut doc = hypermap::io::Document::new(r.clone());
                doc.charge = Some(charge.clone());
                format!(
                    "fits: {fit}, {} orientations found:\n{}",
                    found.len(),
                    doc.to_hmap()
                )
            });
        }
    }
    report.note(format!(
        "{} fitting charges, {} non-fitting",
        counts[0], counts[1]
    ));
    if counts[0] == 0 || counts[1] == 0 {
        report.fail("both outcomes should occur".into());
    }
    report
}

// ---------------------------------------------------------------------------
// Plane counting
// ---------------------------------------------------------------------------

fn monomial_of(p: &DegreeProfile) -> Monomial {
    Monomial::from_exponents(&p.light, &p.dark)
}

fn profile_of(m: &Monomial) -> DegreeProfile {
    DegreeProfile {
        light: m.x_exponents().to_vec(),
        dark: m.y_exponents().to_vec(),
    }
}

fn as_rational(n: u128) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Parameters of a plane count comparison.
#[derive(Clone, Copy, Debug)]
pub struct PlaneCountSetup {
    /// Degree of the dark root face, and required ingirth.
    pub d: usize,
    /// Largest inner face degree.
    pub cap: usize,
    /// Largest number of inner faces.
    pub order: usize,
    /// Restricts the comparison to hypermaps with at most this many edges.
    pub max_edges: Option<usize>,
    /// Also counts through mobiles with at most this many edges plus buds.
    pub mobile_size: Option<usize>,
}

impl PlaneCountSetup {
    /// Every hypermap with at most `edges` edges, with mobiles as far as
    /// they stay cheap.
    pub fn up_to_edges(d: usize, edges: usize) -> Self {
        PlaneCountSetup {
            d,
            cap: edges,
            order: edges,
            max_edges: Some(edges),
            mobile_size: Some((2 * edges).saturating_sub(d).min(6 + d)),
        }
    }
}

/// Coefficients of the plane series against corner-rooted hypermaps of
/// ingirth `d` with a dark root face of degree `d`, and against mobile
/// counts, together with the derivative formulas. The notes hold a
/// tab-separated comparison table.
pub fn plane_counts(setup: PlaneCountSetup) -> Report {
    let PlaneCountSetup {
        d,
        cap,
        order,
        max_edges,
        mobile_size,
    } = setup;
    let mut report = Report::new(format!(
        "plane counts (d = {d}, degrees up to {cap}, up to {order} inner faces{})",
        max_edges.map_or(String::new(), |m| format!(", up to {m} edges"))
    ));
    let solution = solve_wl(d, cap, order);
    let f = solution.f_d();
    let spec = CountSpec {
        max_grade: order,
        cap,
        max_edges,
    };
    let within = |p: &DegreeProfile| max_edges.is_none_or(|m| edges_of_plane_profile(p) <= m);
    let maps = count_plane(d, spec);
    let mobiles = mobile_size.map(|size| (count_plane_by_mobiles(d, size, cap), (size + d) / 2));
    let mut profiles: BTreeSet<DegreeProfile> = maps.keys().cloned().collect();
    profiles.extend(f.terms().keys().map(profile_of).filter(within));
    if let Some((counts, reach)) = &mobiles {
        profiles.extend(
            counts
                .keys()
                .filter(|p| p.grade() <= order && edges_of_plane_profile(p) <= *reach && within(p))
                .cloned(),
        );
    }
    report.note("monomial\tseries\tmaps\tmobiles\tstatus");
    for p in &profiles {
        let m = monomial_of(p);
        let series = f.coefficient(&m);
        let by_maps = maps.get(p).copied().unwrap_or(0);
        let by_mobiles = mobiles.as_ref().and_then(|(counts, reach)| {
            (edges_of_plane_profile(p) <= *reach).then(|| counts.get(p).copied().unwrap_or(0))
        });
        let ok = series == as_rational(by_maps) && by_mobiles.is_none_or(|n| n == by_maps);
        report.check(ok, || {
            format!("{m}: series {series}, maps {by_maps}, mobiles {by_mobiles:?}")
        });
        report.note(format!(
            "{m}\t{series}\t{by_maps}\t{}\t{}",
            by_mobiles.map_or("-".to_string(), |n| n.to_string()),
            if ok { "ok" } else { "MISMATCH" }
        ));
    }
    report.check(f.is_integral(), || "coefficients are not integers".into());
    for k in 1..=cap {
        report.check(
            solution.f_d_derivative_x(k).truncate(order - 1) == f.derivative_x(k),
            || format!("derivative in x_{k}"),
        );
        report.check(
            solution.f_d_derivative_y(k).truncate(order - 1) == f.derivative_y(k),
            || format!("derivative in y_{k}"),
        );
    }
    report
}

// ---------------------------------------------------------------------------
// Annular counting
// ---------------------------------------------------------------------------

fn face_color(c: Color) -> FaceColor {
    match c {
        Color::Dark => FaceColor::Dark,
        Color::Light => FaceColor::Light,
    }
}

/// The series counting an annular family.
pub fn series_family(family: AnnularFamily) -> AnnularSeries {
    let face = |(c, k): (Color, usize)| (face_color(c), k);
    match family {
        AnnularFamily::Full { outer, marked } => AnnularSeries::Full {
            outer: face(outer),
            marked: face(marked),
        },
        AnnularFamily::DarkOuter { marked } => AnnularSeries::DarkOuter {
            marked: face(marked),
        },
        AnnularFamily::LightOuter { marked } => AnnularSeries::LightOuter {
            marked: face(marked),
        },
    }
}

fn faces_up_to(cap: usize) -> Vec<(Color, usize)> {
    [Color::Dark, Color::Light]
        .into_iter()
        .flat_map(|c| (1..=cap).map(move |k| (c, k)))
        .collect()
}

fn product(a: &ProfileCounts, b: &ProfileCounts, max_grade: usize) -> ProfileCounts {
    let mut out = BTreeMap::new();
    for (pa, na) in a {
        for (pb, nb) in b {
            let p = pa.plus(pb);
            if p.grade() <= max_grade {
                *out.entry(p).or_insert(0) += na * nb;
            }
        }
    }
    out
}

/// Coefficients of every annular series for the given `(d, e)` pairs
/// against exhaustive counts, and the decomposition of each full family
/// into an outer and an inner part along the separating cycle of length `e`.
pub fn annular_counts(pairs: &[(usize, usize)], cap: usize, order: usize) -> Report {
    let mut report = Report::new(format!(
        "annular counts ((d, e) in {pairs:?}, degrees up to {cap}, up to {order} other faces)"
    ));
    let spec = CountSpec::new(order, cap);
    for &(d, e) in pairs {
        let solution = solve_wl(d, cap, order);
        let mut outside = BTreeMap::new();
        let mut inside = BTreeMap::new();
        for face in faces_up_to(cap) {
            for (family, store) in [
                (AnnularFamily::LightOuter { marked: face }, &mut outside),
                (AnnularFamily::DarkOuter { marked: face }, &mut inside),
            ] {
                let counts = count_annular(d, e, family, spec);
                compare_annular(&mut report, &solution, d, e, family, &counts);
                store.insert(face, counts);
            }
        }
        for outer in faces_up_to(cap) {
            for marked in faces_up_to(cap) {
                let family = AnnularFamily::Full { outer, marked };
                let full = count_annular(d, e, family, spec);
                compare_annular(&mut report, &solution, d, e, family, &full);
                let glued = product(&outside[&outer], &inside[&marked], order);
                let scaled: ProfileCounts = full
                    .iter()
                    .map(|(p, n)| (p.clone(), n * e as u128))
                    .collect();
                report.check(scaled == glued, || {
                    format!("(d, e) = ({d}, {e}), {family:?}: e times the count differs from the glued product")
                });
            }
        }
    }
    report
}

fn compare_annular(
    report: &mut Report,
    solution: &hyperseries::WlSolution,
    d: usize,
    e: usize,
    family: AnnularFamily,
    counts: &ProfileCounts,
) {
    let series = solution.annular(e, series_family(family));
    let mut profiles: BTreeSet<DegreeProfile> = counts.keys().cloned().collect();
    profiles.extend(series.terms().keys().map(profile_of));
    for p in profiles {
        let m = monomial_of(&p);
        let n = counts.get(&p).copied().unwrap_or(0);
        let c = series.coefficient(&m);
        report.check(c == as_rational(n), || {
            format!("(d, e) = ({d}, {e}), {family:?}, {m}: series {c}, count {n}")
        });
    }
}

// ---------------------------------------------------------------------------
// Girth and charge lemmas
// ---------------------------------------------------------------------------

fn random_balanced_charge(r: &RootedHypermap, rng: &mut StdRng) -> Charge {
    let mut c = Charge::zero(r.hypermap());
    for x in c.vertex.iter_mut().chain(c.face.iter_mut()) {
        *x = q(rng.random_range(-4..=4));
    }
    let total = c.total();
    c.face[0] -= total;
    c
}

fn simply_connected_regions_suffice(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "simply connected regions decide the girth condition (up to {max_edges} edges)"
    ));
    let mut rng = StdRng::seed_from_u64(11);
    let mut violated = 0;
    for r in enumerate_rooted_hypermaps(&EnumerationSpec::face_and_vertex_rooted(max_edges)) {
        for _ in 0..40 {
            let c = random_balanced_charge(&r, &mut rng);
            let all = girth_violation(&r, &c, RegionScope::All).is_none();
            let simple = girth_violation(&r, &c, RegionScope::SimplyConnected).is_none();
            report.check(all == simple, || {
                format!("all regions: {all}, simply connected: {simple}")
            });
            violated += usize::from(!all);
        }
    }
    if violated == 0 {
        report.fail("no sampled charge violates the condition".into());
    }
    report
}

fn uniform_charge_on_regions(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "uniform charge d has total 2d and charge d on simply connected light regions (up to {max_edges} edges)"
    ));
    for h in enumerate_hypermaps_up_to(max_edges) {
        for d in [q(1), q(2), q(3), Rational::new(5, 2)] {
            let c = sigma_d(&h, d);
            report.check(c.total() == d * 2, || format!("total for d = {d}"));
            for (region, stats) in light_regions(&h) {
                if stats.simply_connected {
                    let got = region_charge(&region, &stats, &c);
                    report.check(got == d, || format!("region charge {got} for d = {d}"));
                }
            }
        }
    }
    report
}

fn ingirth_charge_fits(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "ingirth charge fits exactly for ingirth d (d <= 3, up to {max_edges} edges)"
    ));
    let mut seen = [0usize; 2];
    let spec = EnumerationSpec {
        max_edges,
        kinds: vec![RootKind::Dark],
        corners: false,
    };
    for r in enumerate_rooted_hypermaps(&spec) {
        let d = r.map().face_degree(r.root_face().expect("dark root"));
        if d > 3 {
            continue;
        }
        let c = ingirth_charge(&r, d as i128);
        let girth = ingirth(&r) == Some(d) && r.outer_face_is_simple();
        let ok = sigma_girth_check(&r, &c).is_ok() == girth
            && fits(&r, &c) == girth
            && (!girth || c.total() == q(0));
        report.check(ok, || describe_oriented_root(&r));
        seen[usize::from(girth)] += 1;
    }
    if seen.contains(&0) {
        report.fail("both outcomes should occur".into());
    }
    report
}

fn annular_dark_charges(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "dark annular charge encodes separating ingirth e (up to {max_edges} edges)"
    ));
    let mut seen = [0usize; 2];
    for a in enumerate_annular(max_edges, RootKind::Dark) {
        let e = a.rooted.map().face_degree(a.outer()) as i128;
        let girths = annular_girths(&a);
        for d in 1..=3 {
            let c = annular_dark_charge(&a, d, e);
            let expected = girths.non_separating_ingirth.is_none_or(|g| g as i128 >= d)
                && girths.separating_ingirth == Some(e as usize);
            let mut ok = sigma_girth_check(&a.rooted, &c).is_ok() == expected;
            if expected {
                ok &= c.total() == q(0) && a.rooted.outer_face_is_simple() && fits(&a.rooted, &c);
            }
            if d == e {
                let mut plain = ingirth_charge(&a.rooted, d);
                plain.face[a.marked] = c.face[a.marked];
                ok &= plain == c;
            }
            report.check(ok, || format!("d = {d}, e = {e}"));
            seen[usize::from(expected)] += 1;
        }
    }
    if seen.contains(&0) {
        report.fail("both outcomes should occur".into());
    }
    report
}

fn annular_light_charges(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "light annular charge encodes separating outgirth e (up to {max_edges} edges)"
    ));
    let mut seen = [0usize; 2];
    for a in enumerate_annular(max_edges, RootKind::Light) {
        let e = a.rooted.map().face_degree(a.outer());
        let girths = annular_girths(&a);
        let cycles = separating_outward_cycles(&a);
        let contour_simple = a.rooted.outer_face_is_simple();
        for d in 1..=3 {
            let c = annular_light_charge(&a, d, e as i128);
            // The contour is the only separating outward cycle of length e.
            let length_e = cycles.iter().filter(|&&l| l == e).count();
            let expected = girths.non_separating_ingirth.is_none_or(|g| g as i128 >= d)
                && girths.separating_outgirth == Some(e)
                && length_e == usize::from(contour_simple);
            let ok = c.total() == q(0) && sigma_girth_check(&a.rooted, &c).is_ok() == expected;
            report.check(ok, || format!("d = {d}, e = {e}"));
            seen[usize::from(expected)] += 1;
        }
    }
    if seen.contains(&0) {
        report.fail("both outcomes should occur".into());
    }
    report
}

fn partial_charges_on_maps(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "vertex charges on maps fit like their embedding (up to {max_edges} edges)"
    ));
    let mut seen = [0usize; 2];
    let mut rng = StdRng::seed_from_u64(5);
    for edges in 1..=max_edges {
        for h in enumerate_maps(edges) {
            for r in rootings(&h, &[RootKind::Vertex], false) {
                let v0 = r.root_vertex().expect("vertex root");
                let nv = r.map().num_vertices();
                let mut charges = balanced_partial_charges(nv, v0);
                // Charges breaking the sign or total conditions.
                for _ in 0..5 {
                    charges.push((0..nv).map(|_| q(rng.random_range(-1..=3))).collect());
                }
                for sigma in charges {
                    let full = embed_partial_charge(&h, &sigma);
                    let fit = partial_charge_fits(&r, &sigma);
                    report.check(fit == fits(&r, &full), || format!("{sigma:?}"));
                    seen[usize::from(fit)] += 1;
                }
            }
        }
    }
    if seen.contains(&0) {
        report.fail("both outcomes should occur".into());
    }
    report
}

/// Checks the mobile of a map with a fitting vertex charge: weights and
/// degrees follow the charge, and dark squares join two edges.
fn check_charged_mobile(
    r: &RootedHypermap,
    sigma: &[Rational],
    img: &PhiImage,
) -> Result<(), String> {
    let t = &img.mobile;
    if t.excess() != 0 {
        return Err(format!("excess {}", t.excess()));
    }
    for v in 0..t.num_nodes() {
        match t.kind(v) {
            NodeKind::DarkSquare => {
                if t.degree(v) != 2 || t.weight(v) != q(0) {
                    return Err("dark square is not a weight-0 node of degree 2".into());
                }
                let mut ends = Vec::new();
                for s in t.rotation(v) {
                    match s {
                        Slot::Edge(e) => ends.push(t.other_end(*e, v)),
                        Slot::Bud => return Err("bud at a dark square".into()),
                    }
                }
                if ends.iter().all(|&u| t.kind(u) == NodeKind::Round) {
                    return Err("dark square between two round nodes".into());
                }
            }
            NodeKind::LightSquare => {
                if t.weight(v) != q(2) - q(t.degree(v) as i128) {
                    return Err("light square weight is not 2 minus its degree".into());
                }
            }
            NodeKind::Round => {}
        }
    }
    for (mv, &s) in sigma.iter().enumerate() {
        if let Some(node) = img.vertex_node[mv] {
            if t.weight(node) != s {
                return Err(format!("round node of vertex {mv} has the wrong weight"));
            }
        }
    }
    for f in r.hypermap().light_faces() {
        match img.face_node[f] {
            Some(node) if t.degree(node) == r.map().face_degree(f) => {}
            _ => return Err(format!("light face {f} has no square of its degree")),
        }
    }
    for e in t.edges() {
        let round = e.ends.iter().any(|&u| t.kind(u) == NodeKind::Round);
        if (e.weight > q(0)) != round {
            return Err("edge weight sign does not match a round end".into());
        }
    }
    Ok(())
}

fn mobiles_of_charged_maps(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "charged maps biject with suitably weighted mobiles (up to {max_edges} edges)"
    ));
    let mut keys = BTreeSet::new();
    let mut inputs = BTreeSet::new();
    for edges in 1..=max_edges {
        for h in enumerate_maps(edges) {
            for r in rootings(&h, &[RootKind::Vertex], false) {
                let v0 = r.root_vertex().expect("vertex root");
                let nv = r.map().num_vertices();
                for sigma in balanced_partial_charges(nv, v0) {
                    let full = embed_partial_charge(&h, &sigma);
                    if !fits(&r, &full) {
                        continue;
                    }
                    // Charges related by a symmetry of the rooted map are the same charged map.
                    let charged = r.canonical_form_with(|d| {
                        (sigma[r.map().vertex(d)] * 2).to_integer() as u64
                    });
                    if !inputs.insert(charged) {
                        continue;
                    }
                    let outcome = canonical_vertex(&r, &full)
                        .map_err(|e| format!("no canonical orientation: {e}"))
                        .and_then(|o| phi(&r, &o).map_err(|e| format!("phi failed: {e}")))
                        .and_then(|img| {
                            check_charged_mobile(&r, &sigma, &img)?;
                            if !keys.insert(img.mobile.canonical_form()) {
                                return Err("two charged maps share a mobile".into());
                            }
                            let (back, _) =
                                psi(&img.mobile).map_err(|e| format!("psi failed: {e}"))?;
                            if back.canonical_form() != r.canonical_form() {
                                return Err("psi does not recover the map".into());
                            }
                            Ok(())
                        });
                    report.check(outcome.is_ok(), || {
                        format!("{sigma:?}: {}", outcome.unwrap_err())
                    });
                }
            }
        }
    }
    report
}

/// The girth and charge lemmas, each exhaustive up to `max_edges` edges
/// except where the search space forces a smaller bound.
pub fn girth_lemmas(max_edges: usize) -> Vec<Report> {
    vec![
        simply_connected_regions_suffice(max_edges.min(4)),
        uniform_charge_on_regions(max_edges),
        ingirth_charge_fits(max_edges),
        annular_dark_charges(max_edges),
        annular_light_charges(max_edges),
        partial_charges_on_maps(max_edges.min(4)),
        mobiles_of_charged_maps(max_edges.min(3)),
    ]
}

// ---------------------------------------------------------------------------
// Specializations
// ---------------------------------------------------------------------------

/// Blossom trees, constellations and geodesic orientations as special cases.
pub fn specializations(max_size: usize, max_vertex_rooted_edges: usize) -> Vec<Report> {
    let mut blossom = Report::new(format!(
        "1-weighted mobiles match well-charged blossom trees (up to size {max_size})"
    ));
    for size in 1..=max_size {
        let mobiles = enumerate_hypermobiles(size, &Profile::DWeighted(1));
        blossom.check(mobiles.iter().all(|t| t.excess() == -1), || {
            format!("size {size}: excess is not -1")
        });
        let trees = enumerate_blossom_trees(size)
            .into_iter()
            .filter(|t| t.is_well_charged())
            .count();
        blossom.check(mobiles.len() == trees, || {
            format!("size {size}: {} mobiles, {trees} trees", mobiles.len())
        });
    }

    let mut constellations = Report::new(format!(
        "p-constellations have ingirth p (p = 2, 3, up to {max_size} edges)"
    ));
    for p in 2..=3 {
        for edges in (p..=max_size).step_by(p) {
            for h in enumerate_constellations(p, edges) {
                for f in h.dark_faces() {
                    let r = RootedHypermap::new(h.clone(), Root::DarkFace(f))
                        .expect("dark faces are roots");
                    let g = ingirth(&r);
                    constellations.check(g == Some(p), || {
                        format!("p = {p}: ingirth {g:?}\n{}", describe_oriented_root(&r))
                    });
                }
            }
        }
    }

    vec![
        blossom,
        constellations,
        geodesic_orientations(max_vertex_rooted_edges),
    ]
}

fn geodesic_orientations(max_edges: usize) -> Report {
    let mut report = Report::new(format!(
        "geodesic orientation is the canonical one for the 0-weighted charge (up to {max_edges} edges)"
    ));
    let spec = EnumerationSpec {
        max_edges,
        kinds: vec![RootKind::Vertex],
        corners: false,
    };
    for r in enumerate_rooted_hypermaps(&spec) {
        let h = r.hypermap();
        let m = h.map();
        let geo = geodesic_orientation(&r);
        let in_class: Vec<_> = zero_weighted_orientations(&r)
            .into_iter()
            .filter(|o| classify(&r, o, Engine::DualReachability) == Class::InHZero)
            .collect();
        let unique = in_class == [geo.clone()];

        // Shifting every weight by one makes 1-way weights positive; the
        // resulting charge has a canonical orientation, the shifted one.
        let shifted_weights: Vec<Rational> = geo.weights().iter().map(|w| w + q(1)).collect();
        let shifted = Hyperorientation::from_flags(h, &geo.one_way_flags(), shifted_weights);
        let weights = weight_report(h, &shifted);
        let mut charge = Charge::zero(h);
        charge.vertex = weights.vertex.clone();
        for f in 0..m.num_faces() {
            let deg = q(m.face_degree(f) as i128);
            charge.face[f] = if h.is_dark_face(f) {
                -weights.face[f] - deg
            } else {
                weights.face[f] + deg
            };
        }
        let canonical = canonical_vertex(&r, &charge).ok() == Some(shifted);
        report.check(unique && canonical, || {
            format!(
                "unique: {unique}, canonical: {canonical}\n{}",
                describe_oriented_root(&r)
            )
        });
    }
    report
}

// ---------------------------------------------------------------------------
// The d = 4 system with light quadrangles and dark triangles
// ---------------------------------------------------------------------------

/// The expected equations for `d = 4`, light degrees `{4}` and dark degrees
/// `{3}`, with `F = L_0 - L_1W_1 - L_2W_2 - L_3W_3 - L_4W_4`.
pub const EXPECTED_D4_SYSTEM: &str = "L_0=x_4(1+W_0)^3, L_1=W_1^3+2W_1W_2+W_3, L_2=W_1^2+W_2, \
     L_3=W_1, L_4=1, W_0=2y_3L_2L_3, W_1=y_3(2L_1L_3+L_2^2), W_2=2y_3L_1L_2, W_3=y_3L_1^2, \
     W_4=2y_3L_1";

/// The expected annular series with a dark outer quadrangle and a marked
/// light digon, for `d = 4`, light degrees `{4}`, dark degrees `{3}`.
pub const EXPECTED_D4_ANNULAR: &str = "2(4L_2+6L_3^2)(1+W_0)^2";

fn expected_d4_f() -> Poly {
    Poly::parse("L_0-L_1W_1-L_2W_2-L_3W_3-L_4W_4").expect("valid polynomial")
}

/// Compares the emitted system for `d = 4`, light degrees `{4}` and dark
/// degrees `{3}` with the expected one, after normal-form expansion.
pub fn d4_system() -> Report {
    let mut report = Report::new("emitted d = 4 system matches the expected equations");
    let expected = PolySystem::parse(EXPECTED_D4_SYSTEM).expect("valid system");
    let emitted = hyperseries::emit_system(4, &[4], &[3]);
    for (atom, ours, theirs) in emitted.differences(&expected) {
        report.fail(format!(
            "{atom}: emitted {}, expected {}",
            ours.map_or("(none)".into(), |p| p.to_string()),
            theirs.map_or("(none)".into(), |p| p.to_string())
        ));
    }
    report.cases = emitted
        .equations
        .keys()
        .chain(expected.equations.keys())
        .collect::<BTreeSet<_>>()
        .len();
    let sys = SymbolicSystem::new(4, &[4], &[3]);
    let one = |a: Atom| (a == Atom::L(4)).then(|| Poly::integer(1));
    let f = expected_d4_f().substitute(&one);
    report.check(sys.f_d() == f, || {
        format!("F: emitted {}, expected {f}", sys.f_d())
    });
    report
}

/// The annular closed form for a dark outer quadrangle and a marked light
/// digon in the same system.
pub fn d4_annular_closed_form() -> Report {
    let mut report = Report::new("annular closed form for d = 4, light {4}, dark {3}");
    let a = SymbolicSystem::new(4, &[4], &[3]).annular(
        2,
        AnnularSeries::Full {
            outer: (FaceColor::Dark, 4),
            marked: (FaceColor::Light, 2),
        },
    );
    let expected = Poly::parse(EXPECTED_D4_ANNULAR).expect("valid polynomial");
    report.check(a == expected, || {
        format!("computed {a}, expected {expected}")
    });
    report
}

/// Iterates a system from zero series and evaluates `f` at the fixed point,
/// with series truncated to `order` faces.
pub fn fixed_point(system: &PolySystem, f: &Poly, cap: usize, order: usize) -> TruncatedSeries {
    let mut values: BTreeMap<Atom, TruncatedSeries> = BTreeMap::new();
    let lookup = |values: &BTreeMap<Atom, TruncatedSeries>, a: Atom| match a {
        Atom::X(k) => TruncatedSeries::x(cap, order, k),
        Atom::Y(k) => TruncatedSeries::y(cap, order, k),
        _ => values
            .get(&a)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(cap, order)),
    };
    for _ in 0..order + 2 {
        values = system
            .equations
            .iter()
            .map(|(&a, rhs)| (a, rhs.evaluate(cap, order, &|b| lookup(&values, b))))
            .collect();
    }
    f.evaluate(cap, order, &|b| lookup(&values, b))
}

/// Solves both the expected and the emitted `d = 4` systems as series. The
/// notes show both solutions; the emitted equations are also checked
/// against exhaustive counts at `d = 4` for all degrees up to `cap` and up
/// to `order` inner faces.
pub fn d4_fixed_points(cap: usize, order: usize) -> Report {
    let mut report = plane_counts(PlaneCountSetup {
        d: 4,
        cap,
        order,
        max_edges: None,
        mobile_size: None,
    });
    report.name = format!(
        "emitted d = 4 equations count hypermaps (degrees up to {cap}, up to {order} inner faces)"
    );
    report.notes.clear();
    let solve_order = 8;
    let expected = PolySystem::parse(EXPECTED_D4_SYSTEM).expect("valid system");
    let expected_f = fixed_point(&expected, &expected_d4_f(), 4, solve_order);
    let sys = SymbolicSystem::new(4, &[4], &[3]);
    let emitted_f = fixed_point(&sys.equations(), &sys.f_d(), 4, solve_order);
    report.note(format!(
        "solution of the expected system up to {solve_order} faces: F = {expected_f}"
    ));
    report.note(format!(
        "solution of the emitted system up to {solve_order} faces: F = {emitted_f}"
    ));
    let quadrangle = TruncatedSeries::x(4, solve_order, 4);
    if expected_f == quadrangle {
        report.note("the expected system has the degenerate fixed point L_1 = L_2 = L_3 = W_i = 0");
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperseries::rational;

    #[test]
    fn report_passes_only_with_cases_and_no_failures() {
        let mut r = Report::new("r");
        assert!(!r.passed());
        r.check(true, String::new);
        assert!(r.passed());
        r.check(false, || "broken".into());
        assert!(!r.passed());
        assert!(r.render().contains("failure: broken"));
    }

    #[test]
    fn failures_beyond_the_listing_limit_are_counted() {
        let mut r = Report::new("r");
        for i in 0..LISTED_FAILURES + 5 {
            r.fail(i.to_string());
        }
        assert_eq!(r.failed, LISTED_FAILURES + 5);
        assert_eq!(r.failures.len(), LISTED_FAILURES);
        assert!(r.render().contains("5 more failures"));
    }

    #[test]
    fn small_plane_counts_pass() {
        let r = plane_counts(PlaneCountSetup::up_to_edges(1, 3));
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn fixed_point_of_a_single_equation() {
        // L_0 = x_1 (1 + L_0) counts sequences: x_1 + x_1^2 + ...
        let sys = PolySystem::parse("L_0 = x_1(1+L_0)").unwrap();
        let f = fixed_point(&sys, &Poly::atom(Atom::L(0)), 1, 4);
        for k in 1..=4u32 {
            assert_eq!(
                f.coefficient(&Monomial::from_exponents(&[k], &[0])),
                rational(1)
            );
        }
    }
}
