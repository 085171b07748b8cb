//! Series coefficients against exhaustive counts of hypermaps.

use std::collections::BTreeMap;

use hypermap::counting::{
    count_annular, count_constellations, count_plane, count_plane_by_mobiles,
    edges_of_plane_profile, AnnularFamily, CountSpec, DegreeProfile, ProfileCounts,
};
use hypermap::Color;
use hyperseries::{rational, solve_wl, AnnularSeries, FaceColor, Monomial, TruncatedSeries};

fn monomial_of(p: &DegreeProfile) -> Monomial {
    Monomial::from_exponents(&p.light, &p.dark)
}

fn profile_of(m: &Monomial) -> DegreeProfile {
    DegreeProfile {
        light: m.x_exponents().to_vec(),
        dark: m.y_exponents().to_vec(),
    }
}

/// Asserts that `series` and `counts` agree on every monomial up to the
/// series order. Returns the number of nonzero coefficients.
fn assert_matches(series: &TruncatedSeries, counts: &ProfileCounts, what: &str) -> usize {
    for (p, &n) in counts {
        assert_eq!(
            series.coefficient(&monomial_of(p)),
            rational(n as i64),
            "{what}: coefficient of {}",
            monomial_of(p)
        );
    }
    for m in series.terms().keys() {
        assert!(
            counts.contains_key(&profile_of(m)),
            "{what}: coefficient of {m} counts no hypermap"
        );
    }
    counts.len()
}

fn face_color(c: Color) -> FaceColor {
    match c {
        Color::Dark => FaceColor::Dark,
        Color::Light => FaceColor::Light,
    }
}

fn series_family(family: AnnularFamily) -> AnnularSeries {
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

#[test]
fn plane_series_count_hypermaps_by_ingirth() {
    let (cap, order) = (5, 4);
    for d in 1..=3 {
        let counts = count_plane(d, CountSpec::new(order, cap));
        let compared = assert_matches(&solve_wl(d, cap, order).f_d(), &counts, &format!("F_{d}"));
        assert!(compared > 10, "d = {d}: only {compared} coefficients");
    }
}

#[test]
fn plane_series_agree_with_mobile_counts() {
    let (cap, order) = (5, 4);
    for d in 1..=3 {
        let max_size = 6 + d;
        let max_edges = (max_size + d) / 2;
        let f = solve_wl(d, cap, order).f_d();
        let by_mobiles = count_plane_by_mobiles(d, max_size, cap);
        let mut compared = 0;
        for (p, &n) in by_mobiles
            .iter()
            .filter(|(p, _)| p.grade() <= order && edges_of_plane_profile(p) <= max_edges)
        {
            assert_eq!(
                f.coefficient(&monomial_of(p)),
                rational(n as i64),
                "d = {d}: {}",
                monomial_of(p)
            );
            compared += 1;
        }
        for m in f.terms().keys() {
            let p = profile_of(m);
            if edges_of_plane_profile(&p) <= max_edges {
                assert!(by_mobiles.contains_key(&p), "d = {d}: {m} has no mobile");
            }
        }
        assert!(compared >= 2, "d = {d}: only {compared} coefficients");
    }
}

fn faces(cap: usize) -> Vec<(Color, usize)> {
    [Color::Dark, Color::Light]
        .into_iter()
        .flat_map(|c| (1..=cap).map(move |k| (c, k)))
        .collect()
}

#[test]
fn annular_series_count_annular_hypermaps() {
    let (cap, order) = (3, 3);
    let spec = CountSpec::new(order, cap);
    for (d, e) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let solution = solve_wl(d, cap, order);
        let mut families = Vec::new();
        for outer in faces(cap) {
            for marked in faces(cap) {
                families.push(AnnularFamily::Full { outer, marked });
            }
        }
        for marked in faces(cap) {
            families.push(AnnularFamily::DarkOuter { marked });
            families.push(AnnularFamily::LightOuter { marked });
        }
        let mut nonzero = 0;
        for family in families {
            let counts = count_annular(d, e, family, spec);
            let what = format!("(d, e) = ({d}, {e}), {family:?}");
            nonzero += assert_matches(&solution.annular(e, series_family(family)), &counts, &what);
        }
        assert!(
            nonzero > 20,
            "(d, e) = ({d}, {e}): only {nonzero} coefficients"
        );
    }
}

/// The product of two count tables, truncated to `max_grade`.
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

#[test]
fn annular_counts_decompose_along_the_canonical_cycle() {
    let spec = CountSpec::new(3, 3);
    for (d, e) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        for outer in faces(spec.cap) {
            let outside = count_annular(d, e, AnnularFamily::LightOuter { marked: outer }, spec);
            for marked in faces(spec.cap) {
                let inside = count_annular(d, e, AnnularFamily::DarkOuter { marked }, spec);
                let full = count_annular(d, e, AnnularFamily::Full { outer, marked }, spec);
                let glued = product(&outside, &inside, spec.max_grade);
                let scaled: ProfileCounts = full
                    .iter()
                    .map(|(p, n)| (p.clone(), n * e as u128))
                    .collect();
                assert_eq!(
                    scaled, glued,
                    "(d, e) = ({d}, {e}), outer {outer:?}, marked {marked:?}"
                );
            }
        }
    }
}

#[test]
fn constellation_counts_match_the_specialized_series() {
    let (cap, order) = (6, 4);
    for p in [2, 3] {
        let counts = count_constellations(p, CountSpec::new(order, cap));
        let f = solve_wl(p, cap, order).f_d();
        let in_family = |m: &Monomial| {
            m.y_exponents()
                .iter()
                .enumerate()
                .all(|(i, &n)| n == 0 || i + 1 == p)
                && m.x_exponents()
                    .iter()
                    .enumerate()
                    .all(|(i, &n)| n == 0 || (i + 1) % p == 0)
        };
        let restricted: BTreeMap<_, _> = f.terms().iter().filter(|(m, _)| in_family(m)).collect();
        for (prof, &n) in &counts {
            assert_eq!(
                f.coefficient(&monomial_of(prof)),
                rational(n as i64),
                "p = {p}: {}",
                monomial_of(prof)
            );
        }
        for m in restricted.keys() {
            assert!(
                counts.contains_key(&profile_of(m)),
                "p = {p}: {m} counts no constellation"
            );
        }
        assert!(
            counts.len() >= 3,
            "p = {p}: only {} coefficients",
            counts.len()
        );
    }
}
