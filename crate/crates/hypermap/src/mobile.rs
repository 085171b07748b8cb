//! Hypermobiles: plane trees with round, dark-square and light-square nodes,
//! buds hanging at light squares, and rational edge weights.

use std::fmt::Write as _;

use crate::error::{HypermapError, Result};
use crate::io::ReadError;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Round,
    DarkSquare,
    LightSquare,
}

impl NodeKind {
    pub fn tag(self) -> char {
        match self {
            NodeKind::Round => 'R',
            NodeKind::DarkSquare => 'D',
            NodeKind::LightSquare => 'L',
        }
    }
    fn from_tag(c: char) -> Option<NodeKind> {
        match c {
            'R' => Some(NodeKind::Round),
            'D' => Some(NodeKind::DarkSquare),
            'L' => Some(NodeKind::LightSquare),
            _ => None,
        }
    }
}

/// One half-edge position in the rotation of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Edge(usize),
    Bud,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobileEdge {
    pub ends: [usize; 2],
    pub weight: Rational,
}

/// A weighted hypermobile with an explicit counterclockwise rotation of slots
/// at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermobile {
    kinds: Vec<NodeKind>,
    rotation: Vec<Vec<Slot>>,
    edges: Vec<MobileEdge>,
}

/// Sortable isomorphism key of a plane hypermobile.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MobileKey(pub Vec<(u8, u64, i128, i128)>);

impl Hypermobile {
    /// Builds and validates a hypermobile.
    pub fn new(
        kinds: Vec<NodeKind>,
        rotation: Vec<Vec<Slot>>,
        edges: Vec<MobileEdge>,
    ) -> Result<Self> {
        let n = kinds.len();
        let bad = |msg: String| Err(HypermapError::InvalidMobile(msg));
        if rotation.len() != n {
            return bad(format!("{} rotations for {n} nodes", rotation.len()));
        }
        if n == 0 {
            return bad("a hypermobile needs at least one node".into());
        }
        if edges.len() + 1 != n {
            return bad(format!(
                "{} edges on {n} nodes cannot form a tree",
                edges.len()
            ));
        }
        let mut seen = vec![0usize; edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for s in rot {
                match *s {
                    Slot::Bud => {
                        if kinds[v] != NodeKind::LightSquare {
                            return bad(format!("bud at node {v}, which is not a light square"));
                        }
                    }
                    Slot::Edge(e) => {
                        if e >= edges.len() || !edges[e].ends.contains(&v) {
                            return bad(format!(
                                "node {v} lists edge {e}, which is not incident to it"
                            ));
                        }
                        seen[e] += 1;
                    }
                }
            }
        }
        for (e, edge) in edges.iter().enumerate() {
            let [a, b] = edge.ends;
            if a >= n || b >= n || a == b || seen[e] != 2 {
                return bad(format!(
                    "edge {e} is not listed once at each of two distinct ends"
                ));
            }
            let dark = [a, b]
                .iter()
                .filter(|&&x| kinds[x] == NodeKind::DarkSquare)
                .count();
            if dark != 1 {
                return bad(format!("edge {e} has {dark} dark square ends"));
            }
        }
        // Connectivity; together with |E| = |V| - 1 this makes a tree.
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for s in &rotation[v] {
                if let Slot::Edge(e) = *s {
                    let u = other_end(&edges[e], v);
                    if !reached[u] {
                        reached[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return bad("the underlying graph is not connected".into());
        }
        Ok(Hypermobile {
            kinds,
            rotation,
            edges,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.kinds.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn kind(&self, v: usize) -> NodeKind {
        self.kinds[v]
    }
    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }
    pub fn rotation(&self, v: usize) -> &[Slot] {
        &self.rotation[v]
    }
    pub fn edges(&self) -> &[MobileEdge] {
        &self.edges
    }
    pub fn edge(&self, e: usize) -> &MobileEdge {
        &self.edges[e]
    }
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        other_end(&self.edges[e], v)
    }
    /// Number of half-edges at `v`, buds included.
    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }
    pub fn num_buds(&self) -> usize {
        self.rotation
            .iter()
            .flatten()
            .filter(|s| **s == Slot::Bud)
            .count()
    }
    /// Total weight of the edges at `v`.
    pub fn weight(&self, v: usize) -> Rational {
        self.rotation[v]
            .iter()
            .filter_map(|s| match *s {
                Slot::Edge(e) => Some(self.edges[e].weight),
                Slot::Bud => None,
            })
            .sum()
    }
    /// Edges with a round end minus buds.
    pub fn excess(&self) -> i64 {
        let round_edges = self
            .edges
            .iter()
            .filter(|e| e.ends.iter().any(|&v| self.kinds[v] == NodeKind::Round))
            .count();
        round_edges as i64 - self.num_buds() as i64
    }
    /// The charge of a node: its weight for a round node, weight plus degree for
    /// a light square, minus both for a dark square.
    pub fn charge(&self, v: usize) -> Rational {
        let w = self.weight(v);
        let deg = Rational::from(self.degree(v) as i128);
        match self.kinds[v] {
            NodeKind::Round => w,
            NodeKind::LightSquare => w + deg,
            NodeKind::DarkSquare => -w - deg,
        }
    }
    /// Minus the sum of all node charges, which always equals the excess.
    pub fn excess_from_charges(&self) -> Rational {
        -(0..self.num_nodes())
            .map(|v| self.charge(v))
            .sum::<Rational>()
    }

    /// Position of edge `e` in the rotation of its end `v`.
    pub fn slot_of(&self, v: usize, e: usize) -> usize {
        self.rotation[v]
            .iter()
            .position(|s| *s == Slot::Edge(e))
            .expect("edge listed at its end")
    }

    /// Isomorphism key of the plane tree (with weights), unrooted.
    pub fn canonical_form(&self) -> MobileKey {
        self.canonical_form_with(|_| 0)
    }

    /// Isomorphism key including a per-node mark (for example a marked square).
    pub fn canonical_form_with(&self, mark: impl Fn(usize) -> u64) -> MobileKey {
        let starts: Vec<(usize, usize)> = (0..self.num_nodes())
            .flat_map(|v| (0..self.degree(v)).map(move |i| (v, i)))
            .collect();
        if starts.is_empty() {
            return MobileKey(vec![(self.kinds[0] as u8, mark(0), 0, 0)]);
        }
        starts
            .into_iter()
            .map(|(v, i)| {
                let mut out =
                    Vec::with_capacity(2 * self.num_nodes() + self.edges.len() + self.num_buds());
                self.serialize_from(v, i, None, &mark, &mut out);
                MobileKey(out)
            })
            .min()
            .expect("nonempty")
    }

    /// Number of rotations of the plane tree onto itself preserving kinds,
    /// weights and marks. Nontrivial automorphisms fix no slot, so this is the
    /// number of start slots whose serialization is the least one.
    pub fn automorphism_count(&self) -> usize {
        let starts: Vec<(usize, usize)> = (0..self.num_nodes())
            .flat_map(|v| (0..self.degree(v)).map(move |i| (v, i)))
            .collect();
        if starts.is_empty() {
            return 1;
        }
        let keys: Vec<Vec<(u8, u64, i128, i128)>> = starts
            .into_iter()
            .map(|(v, i)| {
                let mut out = Vec::new();
                self.serialize_from(v, i, None, &|_| 0, &mut out);
                out
            })
            .collect();
        let least = keys.iter().min().expect("nonempty");
        let hits = keys.iter().filter(|k| *k == least).count();
        let slots = keys.len();
        // Every orbit of slots has the same size, so the group order divides
        // the number of slots and equals the number of least starts.
        debug_assert_eq!(slots % hits, 0);
        hits
    }

    /// Serializes the tree hanging from `v`, reading its rotation from slot
    /// `first` and skipping the slot of `parent`. Each node is an opening token
    /// with its kind, mark and degree, followed by its slots (a bud token, or an
    /// edge weight token and the subtree behind it), and a closing token.
    fn serialize_from(
        &self,
        v: usize,
        first: usize,
        parent: Option<usize>,
        mark: &impl Fn(usize) -> u64,
        out: &mut Vec<(u8, u64, i128, i128)>,
    ) {
        const BUD: u8 = u8::MAX - 2;
        const EDGE: u8 = u8::MAX - 1;
        const CLOSE: u8 = u8::MAX;
        let deg = self.degree(v);
        out.push((self.kinds[v] as u8, mark(v), deg as i128, 0));
        for k in 0..deg {
            match self.rotation[v][(first + k) % deg] {
                Slot::Bud => out.push((BUD, 0, 0, 0)),
                Slot::Edge(e) if Some(e) == parent => {}
                Slot::Edge(e) => {
                    let w = self.edges[e].weight;
                    out.push((EDGE, 0, *w.numer(), *w.denom()));
                    let u = self.other_end(e, v);
                    self.serialize_from(u, self.slot_of(u, e), Some(e), mark, out);
                }
            }
        }
        out.push((CLOSE, 0, 0, 0));
    }

    /// Writes the MOB v1 text form, a parenthesized tree rooted at node 0.
    pub fn to_mob(&self) -> String {
        let mut s = String::from("mob 1\n");
        self.write_node(0, None, &mut s);
        s.push('\n');
        s
    }

    fn write_node(&self, v: usize, parent_edge: Option<usize>, out: &mut String) {
        out.push(self.kinds[v].tag());
        let deg = self.degree(v);
        let start = match parent_edge {
            Some(e) => self.slot_of(v, e) + 1,
            None => 0,
        };
        let count = if parent_edge.is_some() { deg - 1 } else { deg };
        if count == 0 {
            return;
        }
        out.push('(');
        for k in 0..count {
            if k > 0 {
                out.push_str(", ");
            }
            match self.rotation[v][(start + k) % deg] {
                Slot::Bud => out.push('*'),
                Slot::Edge(e) => {
                    let w = self.edges[e].weight;
                    if *w.denom() == 1 {
                        let _ = write!(out, "{}:", w.numer());
                    } else {
                        let _ = write!(out, "{}/{}:", w.numer(), w.denom());
                    }
                    self.write_node(self.other_end(e, v), Some(e), out);
                }
            }
        }
        out.push(')');
    }

    /// Parses the MOB v1 text form. Syntax errors are reported on the line
    /// of the header or of the tree body; an invalid tree is a domain error.
    pub fn from_mob(text: &str) -> std::result::Result<Self, ReadError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let format = |line: usize, message: String| ReadError::Format { line, message };
        match lines.next() {
            Some((_, "mob 1")) => {}
            Some((n, other)) => {
                return Err(format(
                    n,
                    format!("expected header `mob 1`, found `{other}`"),
                ))
            }
            None => return Err(format(1, "empty document".into())),
        }
        let body: Vec<(usize, &str)> = lines.collect();
        let line = body.first().map_or(2, |(n, _)| *n);
        let mut p = MobParser {
            chars: body
                .iter()
                .flat_map(|(_, l)| l.chars())
                .filter(|c| !c.is_whitespace())
                .collect(),
            pos: 0,
        };
        let mut b = MobileBuilderState::default();
        p.node(&mut b, None).map_err(|m| format(line, m))?;
        if p.pos != p.chars.len() {
            return Err(format(
                line,
                format!("trailing input at position {}", p.pos),
            ));
        }
        Ok(Hypermobile::new(b.kinds, b.rotation, b.edges)?)
    }
}

fn other_end(edge: &MobileEdge, v: usize) -> usize {
    if edge.ends[0] == v {
        edge.ends[1]
    } else {
        edge.ends[0]
    }
}

#[derive(Default)]
struct MobileBuilderState {
    kinds: Vec<NodeKind>,
    rotation: Vec<Vec<Slot>>,
    edges: Vec<MobileEdge>,
}

struct MobParser {
    chars: Vec<char>,
    pos: usize,
}

impl MobParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }
    fn expect(&mut self, c: char) -> std::result::Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{c}` at position {}", self.pos))
        }
    }

    fn node(
        &mut self,
        b: &mut MobileBuilderState,
        parent_edge: Option<usize>,
    ) -> std::result::Result<usize, String> {
        let kind = self
            .peek()
            .and_then(NodeKind::from_tag)
            .ok_or_else(|| format!("expected node tag R, D or L at position {}", self.pos))?;
        self.pos += 1;
        let v = b.kinds.len();
        b.kinds.push(kind);
        b.rotation
            .push(parent_edge.map(Slot::Edge).into_iter().collect());
        if let Some(e) = parent_edge {
            b.edges[e].ends[1] = v;
        }
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                if self.peek() == Some('*') {
                    self.pos += 1;
                    b.rotation[v].push(Slot::Bud);
                } else {
                    let weight = self.weight()?;
                    self.expect(':')?;
                    let e = b.edges.len();
                    b.edges.push(MobileEdge {
                        ends: [v, usize::MAX],
                        weight,
                    });
                    b.rotation[v].push(Slot::Edge(e));
                    self.node(b, Some(e))?;
                }
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(format!("expected `,` or `)` at position {}", self.pos)),
                }
            }
        }
        Ok(v)
    }

    fn weight(&mut self) -> std::result::Result<Rational, String> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '-' || c == '/' || c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        parse_rational(&s).ok_or_else(|| format!("bad weight `{s}` at position {start}"))
    }
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i128 = q.parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational::new(p.parse().ok()?, q))
        }
        None => Some(Rational::from(s.parse::<i128>().ok()?)),
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Weight and sign conditions defining the families of hypermobiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Round weight `d`, light `d - deg`, dark `d*deg - d - deg`, consistently signed.
    DWeighted(i128),
    /// As `DWeighted(d)` except the marked square, which has weight `e - deg`
    /// (light) or `d*deg - e - deg` (dark).
    DEWeighted { d: i128, e: i128, marked: usize },
    /// Round edges positive, light-square edges nonpositive.
    ConsistentlyWeighted,
    /// Round edges weight 0, light-square edges negative, squares `-deg`.
    ZeroWeighted,
    /// As `ZeroWeighted`, except the listed light-square edges may have any weight.
    GeneralizedZeroWeighted(Vec<usize>),
}

fn consistently_signed(t: &Hypermobile) -> bool {
    t.edges.iter().all(|e| {
        let has = |k| e.ends.iter().any(|&v| t.kinds[v] == k);
        if has(NodeKind::Round) {
            e.weight > Rational::from(0)
        } else {
            e.weight <= Rational::from(0)
        }
    })
}

/// Whether `t` satisfies every condition of `profile`.
pub fn validate_profile(t: &Hypermobile, profile: &Profile) -> bool {
    let int = |x: i128| Rational::from(x);
    let deg = |v: usize| t.degree(v) as i128;
    match profile {
        Profile::DWeighted(d) => validate_profile(
            t,
            &Profile::DEWeighted {
                d: *d,
                e: *d,
                marked: usize::MAX,
            },
        ),
        Profile::DEWeighted { d, e, marked } => {
            consistently_signed(t)
                && (0..t.num_nodes()).all(|v| {
                    let expected = match t.kinds[v] {
                        NodeKind::Round => *d,
                        NodeKind::LightSquare if v == *marked => e - deg(v),
                        NodeKind::LightSquare => d - deg(v),
                        NodeKind::DarkSquare if v == *marked => d * deg(v) - e - deg(v),
                        NodeKind::DarkSquare => d * deg(v) - d - deg(v),
                    };
                    t.weight(v) == int(expected)
                })
        }
        Profile::ConsistentlyWeighted => consistently_signed(t),
        Profile::ZeroWeighted => validate_profile(t, &Profile::GeneralizedZeroWeighted(Vec::new())),
        Profile::GeneralizedZeroWeighted(blocked) => {
            let edges_ok = t.edges.iter().enumerate().all(|(i, e)| {
                let has = |k| e.ends.iter().any(|&v| t.kinds[v] == k);
                if has(NodeKind::Round) {
                    e.weight == int(0)
                } else {
                    blocked.contains(&i) || e.weight < int(0)
                }
            });
            edges_ok
                && (0..t.num_nodes()).all(|v| match t.kinds[v] {
                    NodeKind::Round => true,
                    _ => t.weight(v) == int(-deg(v)),
                })
        }
    }
}
