//! Command definitions and their execution. Every command returns its
//! standard output as a string, or an error classified by exit code: 1 for
//! domain errors (the message names the violated invariant) and 2 for
//! format or input errors.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermap::bijection::{phi, psi};
use hypermap::canonical::{canonical_orientation, d_weighted_orientation};
use hypermap::charge::{
    annular_dark_charge, annular_light_charge, fits, ingirth, ingirth_charge, is_map,
    AnnularHypermap, Charge,
};
use hypermap::counting::{
    count_annular, count_plane, AnnularFamily, CountSpec, DegreeProfile, ProfileCounts,
};
use hypermap::dot::{hypermap_dot, mobile_dot};
use hypermap::io::{Document, ReadError};
use hypermap::mobile::Hypermobile;
use hypermap::oracle::{enumerate_rooted_hypermaps, EnumerationSpec};
use hypermap::orientation::{classify, Engine};
use hypermap::{Color, HypermapError, Root, RootKind, RootedHypermap};
use hyperseries::{solve_wl, Monomial, SymbolicSystem, TruncatedSeries};
use num_rational::BigRational;

use crate::suites::{self, PlaneCountSetup, Report};

#[derive(Debug, Parser)]
#[command(
    name = "hmap",
    version,
    about = "Planar hypermaps, hypermobiles, canonical orientations and counting series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks an HMAP document and summarizes it.
    Validate {
        /// HMAP file; standard input when omitted.
        input: Option<PathBuf>,
        /// Prints the document in canonical form instead of a summary.
        #[arg(long)]
        canonical: bool,
    },
    /// Applies the master bijection: HMAP with orientation to MOB (phi), or
    /// MOB to canonical HMAP with orientation (psi).
    Biject {
        #[arg(long, value_enum)]
        dir: Direction,
        input: Option<PathBuf>,
    },
    /// Computes the canonical orientation for a charge function.
    Orient {
        /// `builtin:d=<n>`, `builtin:annular-dark:<d>,<e>`,
        /// `builtin:annular-light:<d>,<e>`, `inline` (charge lines of the
        /// input) or a file of charge lines.
        #[arg(long)]
        charge: String,
        input: Option<PathBuf>,
    },
    /// Writes coefficients of the counting series as a TSV table.
    Count(CountArgs),
    /// Enumerates rooted hypermaps up to a number of edges.
    Enumerate(EnumerateArgs),
    /// Runs a verification suite and prints its report.
    Verify(VerifyArgs),
    /// Renders an HMAP or MOB document as Graphviz DOT.
    ExportDot { input: Option<PathBuf> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Phi,
    Psi,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Degree of the dark root face and required ingirth.
    #[arg(long = "d")]
    pub d: usize,
    /// Largest face degree carrying a variable.
    #[arg(long = "K", visible_alias = "cap", default_value_t = 4)]
    pub cap: usize,
    /// Largest number of counted faces.
    #[arg(long, default_value_t = 4)]
    pub nmax: usize,
    /// Counts annular hypermaps with separating girth `e` instead.
    #[arg(long, value_name = "E")]
    pub annular: Option<usize>,
    /// Outer face of an annular count: `dark:<k>` or `light:<k>`, or `dark`
    /// or `light` for an outer face of degree `e`.
    #[arg(long, value_parser = parse_face_role, requires = "annular")]
    pub outer: Option<FaceRole>,
    /// Marked face of an annular count: `dark:<k>` or `light:<k>`.
    #[arg(long, value_parser = parse_face_role, requires = "annular")]
    pub marked: Option<FaceRole>,
    /// Counts by exhaustive enumeration instead of the series.
    #[arg(long)]
    pub oracle: bool,
    /// Prints the algebraic system instead of coefficients.
    #[arg(long, conflicts_with = "oracle")]
    pub system: bool,
    /// Light face degrees of the algebraic system (default 1..=K).
    #[arg(long, value_delimiter = ',', requires = "system")]
    pub light: Vec<usize>,
    /// Dark face degrees of the algebraic system (default 1..=K).
    #[arg(long, value_delimiter = ',', requires = "system")]
    pub dark: Vec<usize>,
}

/// A face color with an optional degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceRole {
    pub color: Color,
    pub degree: Option<usize>,
}

fn parse_face_role(s: &str) -> Result<FaceRole, String> {
    let (color, degree) = match s.split_once(':') {
        Some((c, k)) => (
            c,
            Some(
                k.parse::<usize>()
                    .ok()
                    .filter(|&k| k > 0)
                    .ok_or_else(|| format!("bad face degree `{k}`"))?,
            ),
        ),
        None => (s, None),
    };
    let color = match color {
        "dark" => Color::Dark,
        "light" => Color::Light,
        other => return Err(format!("expected `dark` or `light`, found `{other}`")),
    };
    Ok(FaceRole { color, degree })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RootChoice {
    Corner,
    Dark,
    Light,
    Vertex,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Largest number of edges.
    #[arg(long)]
    pub edges: usize,
    /// Kind of root.
    #[arg(long, value_enum, default_value_t = RootChoice::Corner)]
    pub root: RootChoice,
    /// Keeps only maps (every dark face of degree 2).
    #[arg(long)]
    pub maps: bool,
    /// Keeps only p-constellations: dark faces of degree p, light faces of
    /// degree a multiple of p.
    #[arg(long, value_name = "P")]
    pub constellation: Option<usize>,
    /// Keeps only face-rooted hypermaps of the given ingirth whose root face
    /// has that degree.
    #[arg(long, value_name = "D")]
    pub ingirth: Option<usize>,
    /// Writes one HMAP file per hypermap into this directory instead of a
    /// count table.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Roundtrip,
    Uniqueness,
    Counts,
    Annular,
    GirthLemmas,
    Specializations,
    System,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Restricts to one root degree (uniqueness) or one series (counts).
    #[arg(long = "d")]
    pub d: Option<usize>,
    /// Largest number of edges of enumerated hypermaps.
    #[arg(long)]
    pub edges: Option<usize>,
}

/// A failed command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// The input is well formed but violates a mathematical invariant.
    Domain(String),
    /// The input is malformed or unreadable.
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Format(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Format(m) => write!(f, "format error: {m}"),
        }
    }
}

impl From<ReadError> for CliError {
    fn from(e: ReadError) -> Self {
        match e {
            ReadError::Format { .. } => CliError::Format(e.to_string()),
            ReadError::Domain(d) => d.into(),
        }
    }
}

impl From<HypermapError> for CliError {
    fn from(e: HypermapError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| CliError::Format(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Format(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

/// Runs a command and returns what it prints on success.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { input, canonical } => {
            let doc = Document::parse(&read_input(input.as_deref())?)?;
            Ok(if canonical {
                doc.canonical().to_hmap()
            } else {
                describe(&doc)
            })
        }
        Command::Biject { dir, input } => biject(dir, &read_input(input.as_deref())?),
        Command::Orient { charge, input } => orient(&charge, &read_input(input.as_deref())?),
        Command::Count(args) => count(&args),
        Command::Enumerate(args) => enumerate(&args),
        Command::Verify(args) => verify(&args),
        Command::ExportDot { input } => {
            let text = read_input(input.as_deref())?;
            if is_mob(&text) {
                Ok(mobile_dot(&Hypermobile::from_mob(&text)?))
            } else {
                Ok(hypermap_dot(&Document::parse(&text)?))
            }
        }
    }
}

fn is_mob(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("mob"))
}

fn describe(doc: &Document) -> String {
    let r = &doc.rooted;
    let h = r.hypermap();
    let m = h.map();
    let dark = h.dark_faces().count();
    let mut out = format!(
        "valid planar hypermap: {} darts, {} vertices, {} edges, {} faces ({dark} dark, {} light)\n",
        m.n_darts(),
        m.num_vertices(),
        m.num_edges(),
        m.num_faces(),
        m.num_faces() - dark
    );
    let root = match r.root() {
        Root::DarkFace(f) => format!("dark face of degree {}", m.face_degree(f)),
        Root::LightFace(f) => format!("light face of degree {}", m.face_degree(f)),
        Root::Vertex(v) => format!("vertex of degree {}", m.vertex_degree(v)),
        Root::Corner(d) => format!("corner at dart {d}"),
    };
    out.push_str(&format!("root: {root}\n"));
    if let Some(g) = r.root_face().and(ingirth(r)) {
        out.push_str(&format!("ingirth: {g}\n"));
    }
    if let Some(f) = doc.marked {
        out.push_str(&format!("marked face of degree {}\n", m.face_degree(f)));
    }
    if let Some(o) = &doc.orientation {
        let class = classify(r, o, Engine::DualReachability);
        out.push_str(&format!("orientation class: {class:?}\n"));
    }
    if let Some(c) = &doc.charge {
        let verdict = if fits(r, c) { "fits" } else { "does not fit" };
        out.push_str(&format!("charge: total {}, {verdict}\n", c.total()));
    }
    out
}

fn biject(dir: Direction, text: &str) -> Result<String, CliError> {
    match dir {
        Direction::Phi => {
            let doc = Document::parse(text)?;
            let o = doc.orientation.as_ref().ok_or_else(|| {
                CliError::Format("phi needs an orientation (`orient:` lines)".into())
            })?;
            Ok(phi(&doc.rooted, o)?.mobile.to_mob())
        }
        Direction::Psi => {
            let t = Hypermobile::from_mob(text)?;
            let (rooted, o) = psi(&t)?;
            let mut doc = Document::new(rooted);
            doc.orientation = Some(o);
            Ok(doc.canonical().to_hmap())
        }
    }
}

fn parse_pair(s: &str) -> Result<(i128, i128), CliError> {
    let bad = || CliError::Format(format!("expected `<d>,<e>`, found `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn annular_of(doc: &Document) -> Result<AnnularHypermap, CliError> {
    let marked = doc
        .marked
        .ok_or_else(|| CliError::Format("annular charges need a `mark:` line".into()))?;
    Ok(AnnularHypermap::new(doc.rooted.clone(), marked)?)
}

fn orient(spec: &str, text: &str) -> Result<String, CliError> {
    let mut doc = Document::parse(text)?;
    let r = doc.rooted.clone();
    let (charge, orientation): (Charge, _) = if let Some(d) = spec.strip_prefix("builtin:d=") {
        let d: usize = d
            .parse()
            .map_err(|_| CliError::Format(format!("bad degree `{d}`")))?;
        (
            ingirth_charge(&r, d as i128),
            d_weighted_orientation(&r, d)?,
        )
    } else if let Some(pair) = spec.strip_prefix("builtin:annular-dark:") {
        let (d, e) = parse_pair(pair)?;
        let c = annular_dark_charge(&annular_of(&doc)?, d, e);
        let o = canonical_orientation(&r, &c)?;
        (c, o)
    } else if let Some(pair) = spec.strip_prefix("builtin:annular-light:") {
        let (d, e) = parse_pair(pair)?;
        let c = annular_light_charge(&annular_of(&doc)?, d, e);
        let o = canonical_orientation(&r, &c)?;
        (c, o)
    } else if spec.starts_with("builtin:") {
        return Err(CliError::Format(format!("unknown builtin charge `{spec}`")));
    } else {
        let c = if spec == "inline" {
            doc.charge
                .clone()
                .ok_or_else(|| CliError::Format("the input has no `charge` lines".into()))?
        } else {
            let lines = read_input(Some(Path::new(spec)))?;
            let combined = format!("{}\n{lines}", text.trim_end());
            Document::parse(&combined)?
                .charge
                .ok_or_else(|| CliError::Format(format!("{spec} has no `charge` lines")))?
        };
        let o = canonical_orientation(&r, &c)?;
        (c, o)
    };
    doc.charge = Some(charge);
    doc.orientation = Some(orientation);
    Ok(doc.to_hmap())
}

fn monomial_of(p: &DegreeProfile) -> Monomial {
    Monomial::from_exponents(&p.light, &p.dark)
}

/// A count table as a series, for uniform TSV output.
fn counts_as_series(counts: &ProfileCounts, cap: usize, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cap, order);
    for (p, &n) in counts {
        s.add_term(monomial_of(p), BigRational::from_integer(n.into()));
    }
    s
}

fn annular_family(args: &CountArgs) -> Result<AnnularFamily, CliError> {
    let face = |role: FaceRole, what: &str| {
        role.degree
            .map(|k| (role.color, k))
            .ok_or_else(|| CliError::Format(format!("the {what} face needs a degree")))
    };
    let marked = args
        .marked
        .ok_or_else(|| CliError::Format("annular counts need --marked".into()))?;
    let marked = face(marked, "marked")?;
    let outer = args
        .outer
        .ok_or_else(|| CliError::Format("annular counts need --outer".into()))?;
    Ok(match (outer.color, outer.degree) {
        (_, Some(k)) => AnnularFamily::Full {
            outer: (outer.color, k),
            marked,
        },
        (Color::Dark, None) => AnnularFamily::DarkOuter { marked },
        (Color::Light, None) => AnnularFamily::LightOuter { marked },
    })
}

fn count(args: &CountArgs) -> Result<String, CliError> {
    if args.d == 0 || args.cap == 0 {
        return Err(CliError::Format("--d and --K must be positive".into()));
    }
    let family = args.annular.map(|_| annular_family(args)).transpose()?;
    if args.system {
        let default: Vec<usize> = (1..=args.cap).collect();
        let pick = |v: &Vec<usize>| {
            if v.is_empty() {
                default.clone()
            } else {
                v.clone()
            }
        };
        let sys = SymbolicSystem::new(args.d, &pick(&args.light), &pick(&args.dark));
        let head = match (args.annular, family) {
            (Some(e), Some(f)) => format!("A = {}", sys.annular(e, suites::series_family(f))),
            _ => format!("F = {}", sys.f_d()),
        };
        return Ok(format!("{head}\n{}", sys.equations()));
    }
    let (cap, order) = (args.cap, args.nmax);
    let series = match (args.annular, family, args.oracle) {
        (Some(e), Some(f), true) => counts_as_series(
            &count_annular(args.d, e, f, CountSpec::new(order, cap)),
            cap,
            order,
        ),
        (Some(e), Some(f), false) => {
            solve_wl(args.d, cap, order).annular(e, suites::series_family(f))
        }
        (_, _, true) => {
            counts_as_series(&count_plane(args.d, CountSpec::new(order, cap)), cap, order)
        }
        _ => solve_wl(args.d, cap, order).f_d(),
    };
    Ok(series.to_tsv())
}

fn enumerate(args: &EnumerateArgs) -> Result<String, CliError> {
    let (kinds, corners) = match args.root {
        RootChoice::Corner => (vec![], true),
        RootChoice::Dark => (vec![RootKind::Dark], false),
        RootChoice::Light => (vec![RootKind::Light], false),
        RootChoice::Vertex => (vec![RootKind::Vertex], false),
    };
    if args.ingirth.is_some() && !matches!(args.root, RootChoice::Dark | RootChoice::Light) {
        return Err(CliError::Format("--ingirth needs a face root".into()));
    }
    let keep = |r: &RootedHypermap| {
        let h = r.hypermap();
        let m = h.map();
        (!args.maps || is_map(h))
            && args.constellation.is_none_or(|p| {
                h.dark_faces().all(|f| m.face_degree(f) == p)
                    && h.light_faces().all(|f| m.face_degree(f) % p == 0)
            })
            && args.ingirth.is_none_or(|d| {
                r.root_face().is_some_and(|f| m.face_degree(f) == d) && ingirth(r) == Some(d)
            })
    };
    let found: Vec<RootedHypermap> = enumerate_rooted_hypermaps(&EnumerationSpec {
        max_edges: args.edges,
        kinds,
        corners,
    })
    .into_iter()
    .filter(|r| keep(r))
    .collect();
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Format(format!("cannot create {}: {e}", dir.display())))?;
            for (i, r) in found.iter().enumerate() {
                let path = dir.join(format!("h{:05}-e{}.hmap", i, r.map().num_edges()));
                fs::write(&path, Document::new(r.clone()).canonical().to_hmap()).map_err(|e| {
                    CliError::Format(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(format!(
                "wrote {} files to {}\n",
                found.len(),
                dir.display()
            ))
        }
        None => {
            let mut by_edges: BTreeMap<usize, usize> = (1..=args.edges).map(|e| (e, 0)).collect();
            for r in &found {
                *by_edges.entry(r.map().num_edges()).or_insert(0) += 1;
            }
            let mut out = String::from("edges\tcount\n");
            for (e, n) in by_edges {
                out.push_str(&format!("{e}\t{n}\n"));
            }
            Ok(out)
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<String, CliError> {
    let degrees: Vec<usize> = match args.d {
        Some(d) => vec![d],
        None => vec![1, 2, 3],
    };
    let reports: Vec<Report> = match args.suite {
        Suite::Roundtrip => {
            let edges = args.edges.unwrap_or(5);
            vec![suites::roundtrip(edges, edges + 1)]
        }
        Suite::Uniqueness => {
            let edges = args.edges.unwrap_or(5);
            vec![
                suites::d_weighted_uniqueness(edges, &degrees),
                suites::charge_uniqueness(edges.min(4), 4),
            ]
        }
        Suite::Counts => degrees
            .iter()
            .map(|&d| {
                suites::plane_counts(match args.edges {
                    Some(edges) => PlaneCountSetup::up_to_edges(d, edges),
                    None => PlaneCountSetup {
                        d,
                        cap: 5,
                        order: 4,
                        max_edges: None,
                        mobile_size: Some(6 + d),
                    },
                })
            })
            .collect(),
        Suite::Annular => vec![suites::annular_counts(
            &[(1, 1), (1, 2), (2, 2), (2, 3)],
            3,
            3,
        )],
        Suite::GirthLemmas => suites::girth_lemmas(args.edges.unwrap_or(5)),
        Suite::Specializations => {
            suites::specializations(args.edges.unwrap_or(6), args.edges.unwrap_or(5))
        }
        Suite::System => vec![
            suites::d4_system(),
            suites::d4_annular_closed_form(),
            suites::d4_fixed_points(5, 4),
        ],
    };
    let text: String = reports.iter().map(Report::render).collect();
    if reports.iter().all(Report::passed) {
        Ok(format!("{text}PASS\n"))
    } else {
        Err(CliError::Domain(format!("{text}FAIL")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_roles_parse() {
        assert_eq!(
            parse_face_role("dark:4"),
            Ok(FaceRole {
                color: Color::Dark,
                degree: Some(4)
            })
        );
        assert_eq!(
            parse_face_role("light"),
            Ok(FaceRole {
                color: Color::Light,
                degree: None
            })
        );
        assert!(parse_face_role("blue:2").is_err());
        assert!(parse_face_role("dark:0").is_err());
    }

    #[test]
    fn command_line_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn mob_documents_are_recognized_by_their_header() {
        assert!(is_mob("# comment\nmob 1\nL(*)\n"));
        assert!(!is_mob("hmap 1 2\n"));
    }
}
