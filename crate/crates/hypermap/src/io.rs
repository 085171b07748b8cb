//! The HMAP v1 text format: a rooted hypermap, optionally with a marked face,
//! a weighted hyperorientation and a charge function.
//!
//! ```text
//! hmap 1 <n_darts>
//! alpha: <image of dart 0> <image of dart 1> ...
//! sigma: <image of dart 0> <image of dart 1> ...
//! root: dark <face-dart> | light <face-dart> | vertex <dart> | corner <dart>
//! mark: <face-dart>                                (optional)
//! orient: <edge-id>:<0|1>:<tail-dart|->:<p/q>      (one per edge, optional)
//! charge v:<vertex-id>=<p/q>                       (optional, default 0)
//! charge f:<face-dart>=<p/q>                       (optional, default 0)
//! ```
//!
//! Vertices and edges are numbered in the order of their least dart, and a
//! face is named by any of its darts (the least one when written). The face
//! of dart 0 is dark unless the root line names the root face with the other
//! color. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::charge::Charge;
use crate::error::HypermapError;
use crate::map::{bfs_order, relabel, Dart, Hypermap, Root, RootedHypermap};
use crate::mobile::{format_rational, parse_rational};
use crate::orientation::{EdgeStatus, Hyperorientation};
use crate::Rational;

/// Errors raised while reading a document: malformed text, or well-formed
/// text describing an invalid object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Domain(#[from] HypermapError),
}

fn format_error(line: usize, message: impl Into<String>) -> ReadError {
    ReadError::Format {
        line,
        message: message.into(),
    }
}

/// A rooted hypermap with the optional data an HMAP file can carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub rooted: RootedHypermap,
    pub marked: Option<usize>,
    pub orientation: Option<Hyperorientation>,
    pub charge: Option<Charge>,
}

impl Document {
    pub fn new(rooted: RootedHypermap) -> Self {
        Document {
            rooted,
            marked: None,
            orientation: None,
            charge: None,
        }
    }

    /// Parses an HMAP v1 document.
    pub fn parse(text: &str) -> Result<Self, ReadError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (n, header) = lines
            .next()
            .ok_or_else(|| format_error(1, "empty document"))?;
        let n_darts = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["hmap", "1", count] => count
                .parse::<usize>()
                .map_err(|_| format_error(n, "bad dart count"))?,
            _ => {
                return Err(format_error(
                    n,
                    format!("expected `hmap 1 <n_darts>`, found `{header}`"),
                ))
            }
        };
        let mut permutation = |name: &str| -> Result<Vec<Dart>, ReadError> {
            let (n, line) = lines
                .next()
                .ok_or_else(|| format_error(n, format!("missing `{name}:` line")))?;
            let rest = line
                .strip_prefix(name)
                .and_then(|r| r.strip_prefix(':'))
                .ok_or_else(|| format_error(n, format!("expected `{name}:`")))?;
            let images: Vec<Dart> = rest
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| format_error(n, format!("bad dart `{t}`")))
                })
                .collect::<Result<_, _>>()?;
            if images.len() != n_darts {
                return Err(format_error(
                    n,
                    format!("expected {n_darts} images, found {}", images.len()),
                ));
            }
            Ok(images)
        };
        let alpha = permutation("alpha")?;
        let sigma = permutation("sigma")?;
        let mut hypermap = Hypermap::from_permutations(alpha, sigma)?;

        let (n, line) = lines
            .next()
            .ok_or_else(|| format_error(n, "missing `root:` line"))?;
        let (kind, dart) = match line
            .strip_prefix("root:")
            .map(|r| r.split_whitespace().collect::<Vec<_>>())
        {
            Some(parts) if parts.len() == 2 => (parts[0], parse_dart(parts[1], n_darts, n)?),
            _ => return Err(format_error(n, "expected `root: <kind> <dart>`")),
        };
        let map = hypermap.map();
        let root = match kind {
            "dark" | "light" => {
                let f = map.face(dart);
                if hypermap.is_dark_face(f) != (kind == "dark") {
                    hypermap = hypermap.swap_colors();
                }
                if kind == "dark" {
                    Root::DarkFace(f)
                } else {
                    Root::LightFace(f)
                }
            }
            "vertex" => Root::Vertex(map.vertex(dart)),
            "corner" => Root::Corner(dart),
            other => return Err(format_error(n, format!("unknown root kind `{other}`"))),
        };
        let rooted = RootedHypermap::new(hypermap, root)?;
        let mut doc = Document::new(rooted);

        let h = doc.rooted.hypermap().clone();
        let m = h.map();
        let mut statuses: Vec<Option<(EdgeStatus, Rational)>> = vec![None; m.num_edges()];
        let mut any_orient = false;
        for (n, line) in lines {
            if let Some(rest) = line.strip_prefix("mark:") {
                if doc.marked.is_some() {
                    return Err(format_error(n, "second `mark:` line"));
                }
                doc.marked = Some(m.face(parse_dart(rest.trim(), n_darts, n)?));
            } else if let Some(rest) = line.strip_prefix("orient:") {
                any_orient = true;
                let fields: Vec<&str> = rest.trim().split(':').collect();
                let [edge, way, tail, weight] = fields[..] else {
                    return Err(format_error(
                        n,
                        "expected `orient: <edge>:<0|1>:<tail|->:<weight>`",
                    ));
                };
                let e: usize = edge
                    .parse()
                    .map_err(|_| format_error(n, format!("bad edge `{edge}`")))?;
                if e >= m.num_edges() {
                    return Err(format_error(n, format!("edge {e} out of range")));
                }
                let status = match (way, tail) {
                    ("0", "-") => EdgeStatus::ZeroWay,
                    ("1", t) => EdgeStatus::OneWay(parse_dart(t, n_darts, n)?),
                    _ => {
                        return Err(format_error(
                            n,
                            "a 0-way edge has tail `-`, a 1-way edge a dart",
                        ))
                    }
                };
                let w = parse_rational(weight)
                    .ok_or_else(|| format_error(n, format!("bad weight `{weight}`")))?;
                if statuses[e].replace((status, w)).is_some() {
                    return Err(format_error(n, format!("edge {e} listed twice")));
                }
            } else if let Some(rest) = line.strip_prefix("charge ") {
                let (target, value) = rest
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| format_error(n, "expected `charge v:<id>=<p/q>`"))?;
                let value = parse_rational(value.trim())
                    .ok_or_else(|| format_error(n, format!("bad charge `{value}`")))?;
                let charge = doc.charge.get_or_insert_with(|| Charge::zero(&h));
                if let Some(v) = target.strip_prefix("v:") {
                    let v: usize = v
                        .parse()
                        .map_err(|_| format_error(n, format!("bad vertex `{v}`")))?;
                    let slot = charge
                        .vertex
                        .get_mut(v)
                        .ok_or_else(|| format_error(n, format!("vertex {v} out of range")))?;
                    *slot = value;
                } else if let Some(d) = target.strip_prefix("f:") {
                    charge.face[m.face(parse_dart(d, n_darts, n)?)] = value;
                } else {
                    return Err(format_error(n, format!("bad charge target `{target}`")));
                }
            } else {
                return Err(format_error(n, format!("unexpected line `{line}`")));
            }
        }
        if any_orient {
            let mut status = Vec::new();
            let mut weight = Vec::new();
            for (e, entry) in statuses.into_iter().enumerate() {
                let (s, w) = entry
                    .ok_or_else(|| format_error(0, format!("edge {e} has no `orient:` line")))?;
                status.push(s);
                weight.push(w);
            }
            doc.orientation = Some(Hyperorientation::new(&h, status, weight)?);
        }
        if let Some(f) = doc.marked {
            if Some(f) == doc.rooted.root_face() {
                return Err(
                    HypermapError::InvalidRoot("the marked face is the root face".into()).into(),
                );
            }
        }
        Ok(doc)
    }

    /// Writes the document in HMAP v1 form. Colors are implied by the
    /// dart 0 rule, so the text reads back as the same document when that
    /// rule holds, as it does for parsed and canonical documents.
    pub fn to_hmap(&self) -> String {
        let h = self.rooted.hypermap();
        let m = h.map();
        let n = m.n_darts();
        let list = |f: &dyn Fn(Dart) -> Dart| {
            (0..n)
                .map(|d| f(d).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let face_dart = |f: usize| {
            m.face_darts(f)
                .iter()
                .copied()
                .min()
                .expect("faces are nonempty")
        };
        let mut out = format!(
            "hmap 1 {n}\nalpha: {}\nsigma: {}\n",
            list(&|d| m.alpha(d)),
            list(&|d| m.sigma(d))
        );
        let root = match self.rooted.root() {
            Root::DarkFace(f) => format!("dark {}", face_dart(f)),
            Root::LightFace(f) => format!("light {}", face_dart(f)),
            Root::Vertex(v) => format!(
                "vertex {}",
                m.vertex_darts(v)
                    .iter()
                    .min()
                    .expect("vertices are nonempty")
            ),
            Root::Corner(d) => format!("corner {d}"),
        };
        let _ = writeln!(out, "root: {root}");
        if let Some(f) = self.marked {
            let _ = writeln!(out, "mark: {}", face_dart(f));
        }
        if let Some(o) = &self.orientation {
            for e in 0..m.num_edges() {
                let w = format_rational(o.weight(e));
                let _ = match o.status(e) {
                    EdgeStatus::ZeroWay => writeln!(out, "orient: {e}:0:-:{w}"),
                    EdgeStatus::OneWay(t) => writeln!(out, "orient: {e}:1:{t}:{w}"),
                };
            }
        }
        if let Some(c) = &self.charge {
            for (v, x) in c.vertex.iter().enumerate() {
                let _ = writeln!(out, "charge v:{v}={}", format_rational(*x));
            }
            for (f, x) in c.face.iter().enumerate() {
                let _ = writeln!(out, "charge f:{}={}", face_dart(f), format_rational(*x));
            }
        }
        out
    }

    /// The same document with darts relabeled canonically, so that isomorphic
    /// documents are written identically. The face of dart 0 is dark.
    pub fn canonical(&self) -> Document {
        let h = self.rooted.hypermap();
        let m = h.map();
        let n = m.n_darts();
        let weight_rank = self.orientation.as_ref().map(|o| ranks(o.weights()));
        let vertex_rank = self.charge.as_ref().map(|c| ranks(&c.vertex));
        let face_rank = self.charge.as_ref().map(|c| ranks(&c.face));
        let decoration = |d: Dart| -> [u64; 5] {
            let e = m.edge(d);
            let (tail, weight) = match (&self.orientation, &weight_rank) {
                (Some(o), Some(r)) => (u64::from(o.status(e) == EdgeStatus::OneWay(d)), r[e]),
                _ => (0, 0),
            };
            [
                tail,
                weight,
                vertex_rank.as_ref().map_or(0, |r| r[m.vertex(d)]),
                face_rank.as_ref().map_or(0, |r| r[m.face(d)]),
                u64::from(self.marked == Some(m.face(d))),
            ]
        };
        let dark_side = |d: Dart| if h.is_dark_dart(d) { d } else { m.alpha(d) };
        let mut best: Option<(Vec<u64>, Vec<Dart>)> = None;
        let mut label = vec![0usize; n];
        for start in self.rooted.root_candidates() {
            let order = bfs_order(m, dark_side(start));
            for (i, &d) in order.iter().enumerate() {
                label[d] = i;
            }
            let mut key = Vec::with_capacity(7 * n);
            for &d in &order {
                key.push(label[m.alpha(d)] as u64);
                key.push(label[m.sigma(d)] as u64);
                key.extend(decoration(d));
            }
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, order));
            }
        }
        let (_, order) = best.expect("every root has a candidate dart");
        let mut new_of_old = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let map = relabel(m, &new_of_old).expect("relabeling keeps a valid map");
        let mut dark = vec![false; map.num_faces()];
        for old in 0..n {
            dark[map.face(new_of_old[old])] = h.is_dark_dart(old);
        }
        let hypermap = Hypermap::with_colors(map, dark).expect("relabeling keeps the coloring");
        let nm = hypermap.map();
        let face_of = |f: usize| nm.face(new_of_old[m.face_darts(f)[0]]);
        let vertex_of = |v: usize| nm.vertex(new_of_old[m.vertex_darts(v)[0]]);
        let edge_of = |e: usize| nm.edge(new_of_old[m.edge_darts(e)[0]]);
        let root = match self.rooted.root() {
            Root::DarkFace(f) => Root::DarkFace(face_of(f)),
            Root::LightFace(f) => Root::LightFace(face_of(f)),
            Root::Vertex(v) => Root::Vertex(vertex_of(v)),
            Root::Corner(d) => Root::Corner(new_of_old[d]),
        };
        let orientation = self.orientation.as_ref().map(|o| {
            let mut status = vec![EdgeStatus::ZeroWay; nm.num_edges()];
            let mut weight = vec![Rational::from(0); nm.num_edges()];
            for e in 0..m.num_edges() {
                status[edge_of(e)] = match o.status(e) {
                    EdgeStatus::ZeroWay => EdgeStatus::ZeroWay,
                    EdgeStatus::OneWay(t) => EdgeStatus::OneWay(new_of_old[t]),
                };
                weight[edge_of(e)] = o.weight(e);
            }
            Hyperorientation::new(&hypermap, status, weight).expect("relabeling keeps tails legal")
        });
        let charge = self.charge.as_ref().map(|c| {
            let mut out = Charge::zero(&hypermap);
            for (v, x) in c.vertex.iter().enumerate() {
                out.vertex[vertex_of(v)] = *x;
            }
            for (f, x) in c.face.iter().enumerate() {
                out.face[face_of(f)] = *x;
            }
            out
        });
        let marked = self.marked.map(face_of);
        let rooted = RootedHypermap::new(hypermap, root).expect("relabeling keeps the root valid");
        Document {
            rooted,
            marked,
            orientation,
            charge,
        }
    }
}

fn parse_dart(token: &str, n_darts: usize, line: usize) -> Result<Dart, ReadError> {
    let d: Dart = token
        .trim()
        .parse()
        .map_err(|_| format_error(line, format!("bad dart `{token}`")))?;
    if d >= n_darts {
        return Err(format_error(line, format!("dart {d} out of range")));
    }
    Ok(d)
}

/// Rank of each value among the distinct values, which is preserved by any
/// relabeling.
fn ranks(values: &[Rational]) -> Vec<u64> {
    let mut sorted = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("present") as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{cycle_hypermap, loop_hypermap};

    #[test]
    fn loop_document_round_trips() {
        let r = RootedHypermap::new(loop_hypermap(), Root::DarkFace(0)).unwrap();
        let doc = Document::new(r);
        let text = doc.to_hmap();
        assert_eq!(text, "hmap 1 2\nalpha: 1 0\nsigma: 1 0\nroot: dark 0\n");
        assert_eq!(Document::parse(&text).unwrap(), doc);
    }

    #[test]
    fn light_roots_keep_their_color() {
        let h = cycle_hypermap(3);
        let light = h.light_faces().next().unwrap();
        let doc =
            Document::new(RootedHypermap::new(h, Root::LightFace(light)).unwrap()).canonical();
        assert!(doc.rooted.hypermap().is_dark_dart(0));
        let back = Document::parse(&doc.to_hmap()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn format_and_domain_errors_are_distinguished() {
        assert!(matches!(
            Document::parse("hmap 2 2"),
            Err(ReadError::Format { .. })
        ));
        assert!(matches!(
            Document::parse("hmap 1 2\nalpha: 1 x\n"),
            Err(ReadError::Format { .. })
        ));
        let not_involution = "hmap 1 3\nalpha: 1 2 0\nsigma: 0 1 2\nroot: corner 0\n";
        assert!(matches!(
            Document::parse(not_involution),
            Err(ReadError::Domain(_))
        ));
    }
}
