//! The planted-tree equations for `W_i` and `L_i`, the generating function
//! `F_d` of corner-rooted hypermaps of ingirth `d` with a dark root face of
//! degree `d`, its partial derivatives, and the annular generating functions.
//!
//! With `M(u) = u + sum_{k<=0} W_k u^{k+1}` and
//! `L(u) = u^{1-d} sum_k L_k u^k`:
//!
//! * `L_i = h_{d-i}(W_1, ..., W_{d-1})` for `i >= 1`,
//! * `L_i = [u^{d-i-1}] sum_{k >= d-i} x_k M(u)^{k-1}` for `i <= 0`,
//! * `W_i = [u^{-i-1}] sum_k y_k L(u)^{k-1}`,
//! * `F_d = L_0 - sum_{i=1}^{d} L_i W_i`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::laurent::{Coefficient, Laurent};
use crate::series::TruncatedSeries;
use crate::symbolic::{Atom, Poly, PolySystem};

/// `h_k(w_1, ..., w_s)`: the sum over compositions of `k` of the products of
/// `w_part` over the parts; `h_0 = 1`. `one` fixes the coefficient ring.
pub fn h_poly<C: Coefficient>(k: usize, ws: &[C], one: &C) -> C {
    let mut h = vec![one.clone()];
    for n in 1..=k {
        let mut acc = one.zero_like();
        for m in 1..=n.min(ws.len()) {
            acc = acc.plus(&ws[m - 1].times(&h[n - m]));
        }
        h.push(acc);
    }
    h.pop().expect("h_0 is always present")
}

/// Color of a distinguished face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceColor {
    Dark,
    Light,
}

/// The annular generating functions: the full family, the dark-outer factor
/// and the light-outer factor of its decomposition along the canonical cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnularSeries {
    /// Separating ingirth `e`, non-separating ingirth at least `d`, outer face
    /// of the given color and degree, marked inner face of the given color and
    /// degree.
    Full {
        outer: (FaceColor, usize),
        marked: (FaceColor, usize),
    },
    /// Dark outer face of degree `e`, separating ingirth `e`.
    DarkOuter { marked: (FaceColor, usize) },
    /// Light outer face of degree `e`, separating outgirth `e`, the outer
    /// contour being the only separating outward cycle of length `e`.
    LightOuter { marked: (FaceColor, usize) },
}

/// Index windows outside which the series vanish or are never used: `L_i`
/// for `min(d-K, 0) <= i <= d`, `W_i` for `-K <= i <= d`.
fn windows(d: usize, cap: usize) -> ((i64, i64), (i64, i64)) {
    let (d, cap) = (d as i64, cap as i64);
    (((d - cap).min(0), d), (-cap, d))
}

/// The planted-tree equations over a coefficient ring, parametrized by the
/// face variables, so that the numeric and the symbolic systems share them.
struct Equations<'a, C> {
    d: usize,
    light_degrees: &'a [usize],
    dark_degrees: &'a [usize],
    x: &'a dyn Fn(usize) -> C,
    y: &'a dyn Fn(usize) -> C,
    one: C,
}

impl<C: Coefficient> Equations<'_, C> {
    fn m_of_u(&self, w: &impl Fn(i64) -> C) -> Laurent<C> {
        let mut m = Laurent::new();
        m.add_term(1, self.one.clone());
        let lowest = -(self.dark_degrees.iter().copied().max().unwrap_or(0) as i64);
        for k in lowest..=0 {
            m.add_term(k + 1, w(k));
        }
        m
    }

    fn l_of_u(&self, l: &impl Fn(i64) -> C, (lo, hi): (i64, i64)) -> Laurent<C> {
        let mut out = Laurent::new();
        for k in lo..=hi {
            out.add_term(k + 1 - self.d as i64, l(k));
        }
        out
    }

    /// Right-hand side for `L_i`.
    fn l_rhs(&self, i: i64, w: &impl Fn(i64) -> C, m_powers: &BTreeMap<usize, Laurent<C>>) -> C {
        let d = self.d as i64;
        if i > d {
            return self.one.zero_like();
        }
        if i >= 1 {
            let ws: Vec<C> = (1..d).map(w).collect();
            return h_poly((d - i) as usize, &ws, &self.one);
        }
        let zero = self.one.zero_like();
        let mut acc = zero.clone();
        for &k in self.light_degrees {
            if k as i64 >= d - i {
                let coefficient = m_powers[&(k - 1)].coefficient_or(d - i - 1, &zero);
                acc = acc.plus(&(self.x)(k).times(&coefficient));
            }
        }
        acc
    }

    /// Right-hand side for `W_i`.
    fn w_rhs(&self, i: i64, l_powers: &BTreeMap<usize, Laurent<C>>) -> C {
        let zero = self.one.zero_like();
        let mut acc = zero.clone();
        for &k in self.dark_degrees {
            let coefficient = l_powers[&(k - 1)].coefficient_or(-i - 1, &zero);
            acc = acc.plus(&(self.y)(k).times(&coefficient));
        }
        acc
    }

    fn m_powers(&self, w: &impl Fn(i64) -> C) -> BTreeMap<usize, Laurent<C>> {
        let m = self.m_of_u(w);
        self.light_degrees
            .iter()
            .map(|&k| (k - 1, m.pow(k - 1, &self.one)))
            .collect()
    }

    fn l_powers(&self, l: &impl Fn(i64) -> C, window: (i64, i64)) -> BTreeMap<usize, Laurent<C>> {
        let lu = self.l_of_u(l, window);
        self.dark_degrees
            .iter()
            .map(|&k| (k - 1, lu.pow(k - 1, &self.one)))
            .collect()
    }
}

/// The solved series `L_i`, `W_i` for all degrees up to a cap, truncated at a
/// total face count.
#[derive(Clone, Debug)]
pub struct WlSolution {
    d: usize,
    cap: usize,
    order: usize,
    l: BTreeMap<i64, TruncatedSeries>,
    w: BTreeMap<i64, TruncatedSeries>,
}

/// Solves the planted-tree equations grade by grade for ingirth `d`, face
/// degrees at most `cap`, up to total face count `order`.
pub fn solve_wl(d: usize, cap: usize, order: usize) -> WlSolution {
    assert!(d >= 1 && cap >= 1, "d and the degree cap must be positive");
    let degrees: Vec<usize> = (1..=cap).collect();
    let x = |k: usize| TruncatedSeries::x(cap, order, k);
    let y = |k: usize| TruncatedSeries::y(cap, order, k);
    let eq = Equations {
        d,
        light_degrees: &degrees,
        dark_degrees: &degrees,
        x: &x,
        y: &y,
        one: TruncatedSeries::one(cap, order),
    };
    let (l_window, w_window) = windows(d, cap);
    let zero = TruncatedSeries::zero(cap, order);
    let mut l: BTreeMap<i64, TruncatedSeries> = (l_window.0..=l_window.1)
        .map(|i| (i, zero.clone()))
        .collect();
    let mut w: BTreeMap<i64, TruncatedSeries> = (w_window.0..=w_window.1)
        .map(|i| (i, zero.clone()))
        .collect();
    // Every W carries a y factor and every L_i with i <= 0 an x factor, so each
    // round fixes one more grade; the extra rounds confirm the fixed point.
    for round in 0.. {
        let get_w = |i: i64| w.get(&i).cloned().unwrap_or_else(|| zero.clone());
        let m_powers = eq.m_powers(&get_w);
        let new_l: BTreeMap<i64, TruncatedSeries> = l
            .keys()
            .map(|&i| (i, eq.l_rhs(i, &get_w, &m_powers)))
            .collect();
        let get_l = |i: i64| new_l.get(&i).cloned().unwrap_or_else(|| zero.clone());
        let l_powers = eq.l_powers(&get_l, l_window);
        let new_w: BTreeMap<i64, TruncatedSeries> =
            w.keys().map(|&i| (i, eq.w_rhs(i, &l_powers))).collect();
        let stable = new_l == l && new_w == w;
        l = new_l;
        w = new_w;
        if stable {
            break;
        }
        assert!(
            round <= order + 2,
            "the planted-tree iteration did not stabilize"
        );
    }
    WlSolution {
        d,
        cap,
        order,
        l,
        w,
    }
}

impl WlSolution {
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn order(&self) -> usize {
        self.order
    }

    fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(self.cap, self.order)
    }

    fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.cap, self.order)
    }

    /// `L_i` (zero outside the solved window).
    pub fn l(&self, i: i64) -> TruncatedSeries {
        self.l.get(&i).cloned().unwrap_or_else(|| self.zero())
    }

    /// `W_i` (zero outside the solved window).
    pub fn w(&self, i: i64) -> TruncatedSeries {
        self.w.get(&i).cloned().unwrap_or_else(|| self.zero())
    }

    /// Indices of the solved `L_i` and `W_i`.
    pub fn windows(&self) -> (Vec<i64>, Vec<i64>) {
        (
            self.l.keys().copied().collect(),
            self.w.keys().copied().collect(),
        )
    }

    /// `M(u) = u + sum_{k<=0} W_k u^{k+1}`.
    pub fn m_of_u(&self) -> Laurent<TruncatedSeries> {
        let mut m = Laurent::new();
        m.add_term(1, self.one());
        for (&k, w) in self.w.range(..=0) {
            m.add_term(k + 1, w.clone());
        }
        m
    }

    /// `L(u) = u^{1-d} sum_k L_k u^k`.
    pub fn l_of_u(&self) -> Laurent<TruncatedSeries> {
        let mut out = Laurent::new();
        for (&k, l) in &self.l {
            out.add_term(k + 1 - self.d as i64, l.clone());
        }
        out
    }

    fn with_equations<T>(&self, f: impl FnOnce(&Equations<'_, TruncatedSeries>) -> T) -> T {
        let degrees: Vec<usize> = (1..=self.cap).collect();
        let (cap, order) = (self.cap, self.order);
        let x = |k: usize| TruncatedSeries::x(cap, order, k);
        let y = |k: usize| TruncatedSeries::y(cap, order, k);
        let eq = Equations {
            d: self.d,
            light_degrees: &degrees,
            dark_degrees: &degrees,
            x: &x,
            y: &y,
            one: self.one(),
        };
        f(&eq)
    }

    /// The right-hand sides of the `L` equations at the given indices,
    /// evaluated on the solution.
    pub fn l_equation(&self, indices: &[i64]) -> Vec<TruncatedSeries> {
        self.with_equations(|eq| {
            let m_powers = eq.m_powers(&|i| self.w(i));
            indices
                .iter()
                .map(|&i| eq.l_rhs(i, &|k| self.w(k), &m_powers))
                .collect()
        })
    }

    /// The right-hand sides of the `W` equations at the given indices,
    /// evaluated on the solution.
    pub fn w_equation(&self, indices: &[i64]) -> Vec<TruncatedSeries> {
        self.with_equations(|eq| {
            let window = (*self.l.keys().next().expect("nonempty"), self.d as i64);
            let l_powers = eq.l_powers(&|i| self.l(i), window);
            indices.iter().map(|&i| eq.w_rhs(i, &l_powers)).collect()
        })
    }

    /// `F_d = L_0 - sum_{i=1}^d L_i W_i`.
    pub fn f_d(&self) -> TruncatedSeries {
        let mut f = self.l(0);
        for i in 1..=self.d as i64 {
            f = &f - &(&self.l(i) * &self.w(i));
        }
        f
    }

    /// `dF_d/dx_k = (d/k) [u^d] M(u)^k`.
    pub fn f_d_derivative_x(&self, k: usize) -> TruncatedSeries {
        let c = self
            .m_of_u()
            .pow(k, &self.one())
            .coefficient_or(self.d as i64, &self.zero());
        c.scale(&BigRational::new(BigInt::from(self.d), BigInt::from(k)))
    }

    /// `dF_d/dy_k = (d/k) [u^{-d}] L(u)^k`.
    pub fn f_d_derivative_y(&self, k: usize) -> TruncatedSeries {
        let c = self
            .l_of_u()
            .pow(k, &self.one())
            .coefficient_or(-(self.d as i64), &self.zero());
        c.scale(&BigRational::new(BigInt::from(self.d), BigInt::from(k)))
    }

    /// `[u^exponent] M(u)^k` for a light face of degree `k`, or
    /// `[u^exponent] L(u)^k` for a dark one.
    fn face_factor(&self, (color, k): (FaceColor, usize), exponent: i64) -> TruncatedSeries {
        let base = match color {
            FaceColor::Light => self.m_of_u(),
            FaceColor::Dark => self.l_of_u(),
        };
        base.pow(k, &self.one())
            .coefficient_or(exponent, &self.zero())
    }

    /// The annular generating functions for separating girth `e`:
    /// `B = e [u^e] M^k` (light mark) or `e [u^-e] L^k` (dark mark),
    /// `C = e [u^-e] M^k` or `e [u^e] L^k`, and `A = C * B / e`.
    pub fn annular(&self, e: usize, series: AnnularSeries) -> TruncatedSeries {
        let e_int = e as i64;
        let scale = BigRational::from_integer(BigInt::from(e));
        // Sign of the exponent for the dark-outer (B) and light-outer (C) factors.
        let sign = |color: FaceColor, dark_outer: bool| match (color, dark_outer) {
            (FaceColor::Light, true) | (FaceColor::Dark, false) => e_int,
            (FaceColor::Light, false) | (FaceColor::Dark, true) => -e_int,
        };
        match series {
            AnnularSeries::DarkOuter { marked } => {
                self.face_factor(marked, sign(marked.0, true)).scale(&scale)
            }
            AnnularSeries::LightOuter { marked } => self
                .face_factor(marked, sign(marked.0, false))
                .scale(&scale),
            AnnularSeries::Full { outer, marked } => {
                let c = self.face_factor(outer, sign(outer.0, false));
                let b = self.face_factor(marked, sign(marked.0, true));
                (&c * &b).scale(&scale)
            }
        }
    }
}

/// The algebraic system for light inner face degrees in `light_degrees` and
/// dark inner face degrees in `dark_degrees`, over the finitely many series
/// involved in `F_d`, with constant series substituted.
#[derive(Clone, Debug)]
pub struct SymbolicSystem {
    d: usize,
    light_degrees: Vec<usize>,
    dark_degrees: Vec<usize>,
    /// Every nonzero series with its right-hand side, constants substituted.
    rhs: BTreeMap<Atom, Poly>,
    /// Series whose value is a constant.
    constants: BTreeMap<Atom, Poly>,
}

impl SymbolicSystem {
    pub fn new(d: usize, light_degrees: &[usize], dark_degrees: &[usize]) -> Self {
        assert!(d >= 1, "d must be positive");
        assert!(
            light_degrees.iter().chain(dark_degrees).all(|&k| k >= 1),
            "degrees are positive"
        );
        let light: Vec<usize> = light_degrees
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let dark: Vec<usize> = dark_degrees
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let light_cap = light.iter().copied().max().unwrap_or(0);
        let dark_cap = dark.iter().copied().max().unwrap_or(0);
        let l_window = ((d as i64 - light_cap as i64).min(0), d as i64);
        let w_window = (-(dark_cap as i64), d as i64);
        let x = |k: usize| Poly::atom(Atom::X(k));
        let y = |k: usize| Poly::atom(Atom::Y(k));
        let eq = Equations {
            d,
            light_degrees: &light,
            dark_degrees: &dark,
            x: &x,
            y: &y,
            one: Poly::integer(1),
        };
        let w_atom = |i: i64| Poly::atom(Atom::W(i));
        let l_atom = |i: i64| Poly::atom(Atom::L(i));
        let m_powers = eq.m_powers(&w_atom);
        let l_powers = eq.l_powers(&l_atom, l_window);
        let mut raw: BTreeMap<Atom, Poly> = BTreeMap::new();
        for i in l_window.0..=l_window.1 {
            raw.insert(Atom::L(i), eq.l_rhs(i, &w_atom, &m_powers));
        }
        for i in w_window.0..=w_window.1 {
            raw.insert(Atom::W(i), eq.w_rhs(i, &l_powers));
        }
        // Least fixed point of the support: a series is nonzero when its
        // right-hand side is nonzero once the zero series are removed.
        let mut support: BTreeSet<Atom> = BTreeSet::new();
        loop {
            let kill = |a: Atom| {
                (matches!(a, Atom::L(_) | Atom::W(_)) && !support.contains(&a)).then(Poly::zero)
            };
            let next: BTreeSet<Atom> = raw
                .iter()
                .filter(|(_, rhs)| !rhs.substitute(&kill).is_zero())
                .map(|(&a, _)| a)
                .collect();
            if next == support {
                break;
            }
            support = next;
        }
        // Substitute zeros, then constants, until nothing changes.
        let mut rhs: BTreeMap<Atom, Poly> = BTreeMap::new();
        let mut constants: BTreeMap<Atom, Poly> = BTreeMap::new();
        loop {
            let value = |a: Atom| {
                if !matches!(a, Atom::L(_) | Atom::W(_)) {
                    None
                } else if !support.contains(&a) {
                    Some(Poly::zero())
                } else {
                    constants.get(&a).cloned()
                }
            };
            let next: BTreeMap<Atom, Poly> = support
                .iter()
                .map(|&a| (a, raw[&a].substitute(&value)))
                .collect();
            let next_constants: BTreeMap<Atom, Poly> = next
                .iter()
                .filter(|(_, p)| p.as_constant().is_some())
                .map(|(&a, p)| (a, p.clone()))
                .collect();
            let done = next == rhs && next_constants == constants;
            rhs = next;
            constants = next_constants;
            if done {
                break;
            }
        }
        SymbolicSystem {
            d,
            light_degrees: light,
            dark_degrees: dark,
            rhs,
            constants,
        }
    }

    fn simplify(&self, p: &Poly) -> Poly {
        p.substitute(&|a| match a {
            Atom::L(_) | Atom::W(_) if !self.rhs.contains_key(&a) => Some(Poly::zero()),
            _ => self.constants.get(&a).cloned(),
        })
    }

    /// `F_d` in terms of the series, simplified.
    pub fn f_d(&self) -> Poly {
        let mut f = Poly::atom(Atom::L(0));
        for i in 1..=self.d as i64 {
            f = f.sub(&Poly::atom(Atom::L(i)).mul(&Poly::atom(Atom::W(i))));
        }
        self.simplify(&f)
    }

    /// The annular generating function in terms of the series, simplified.
    pub fn annular(&self, e: usize, series: AnnularSeries) -> Poly {
        let one = Poly::integer(1);
        let m = {
            let mut m = Laurent::new();
            m.add_term(1, one.clone());
            for (&a, _) in self.rhs.iter() {
                if let Atom::W(k) = a {
                    if k <= 0 {
                        m.add_term(k + 1, Poly::atom(a));
                    }
                }
            }
            m
        };
        let lu = {
            let mut out = Laurent::new();
            for &a in self.rhs.keys() {
                if let Atom::L(k) = a {
                    out.add_term(k + 1 - self.d as i64, Poly::atom(a));
                }
            }
            out
        };
        let e_int = e as i64;
        let factor = |(color, k): (FaceColor, usize), exponent: i64| {
            let base = if color == FaceColor::Light { &m } else { &lu };
            base.pow(k, &one).coefficient_or(exponent, &Poly::zero())
        };
        let sign = |color: FaceColor, dark_outer: bool| {
            if (color == FaceColor::Light) == dark_outer {
                e_int
            } else {
                -e_int
            }
        };
        let scale = BigRational::from_integer(BigInt::from(e));
        let p = match series {
            AnnularSeries::DarkOuter { marked } => factor(marked, sign(marked.0, true)),
            AnnularSeries::LightOuter { marked } => factor(marked, sign(marked.0, false)),
            AnnularSeries::Full { outer, marked } => {
                factor(outer, sign(outer.0, false)).mul(&factor(marked, sign(marked.0, true)))
            }
        };
        self.simplify(&p.scale(&scale))
    }

    /// The equations of the series involved in `F_d`: the closure of the
    /// atoms of `F_d` under the dependencies of the equations, constants
    /// included as equations of their own.
    pub fn equations(&self) -> PolySystem {
        let mut involved: BTreeSet<Atom> = BTreeSet::new();
        let mut stack: Vec<Atom> = Poly::atom(Atom::L(0))
            .add(&(1..=self.d as i64).fold(Poly::zero(), |acc, i| {
                acc.add(&Poly::atom(Atom::L(i)).mul(&Poly::atom(Atom::W(i))))
            }))
            .atoms()
            .into_iter()
            .collect();
        while let Some(a) = stack.pop() {
            if !self.rhs.contains_key(&a) || !involved.insert(a) {
                continue;
            }
            stack.extend(self.rhs[&a].atoms());
        }
        PolySystem {
            equations: involved
                .into_iter()
                .map(|a| (a, self.rhs[&a].clone()))
                .collect(),
        }
    }

    /// Every nonzero series with its simplified right-hand side.
    pub fn all_equations(&self) -> PolySystem {
        PolySystem {
            equations: self.rhs.clone(),
        }
    }

    pub fn light_degrees(&self) -> &[usize] {
        &self.light_degrees
    }

    pub fn dark_degrees(&self) -> &[usize] {
        &self.dark_degrees
    }
}

/// The algebraic system of `F_d` restricted to the given face degrees.
pub fn emit_system(d: usize, light_degrees: &[usize], dark_degrees: &[usize]) -> PolySystem {
    SymbolicSystem::new(d, light_degrees, dark_degrees).equations()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational;

    #[test]
    fn h_poly_small_cases() {
        let one = Poly::integer(1);
        let w = |i| Poly::atom(Atom::W(i));
        assert_eq!(h_poly(0, &[w(1), w(2)], &one), one);
        assert_eq!(
            h_poly(2, &[w(1), w(2)], &one),
            Poly::parse("W_1^2 + W_2").unwrap()
        );
        assert_eq!(
            h_poly(3, &[w(1), w(2), w(3)], &one),
            Poly::parse("W_1^3 + 2W_1W_2 + W_3").unwrap()
        );
    }

    #[test]
    fn l_d_is_one() {
        for d in 1..4 {
            let s = solve_wl(d, 3, 3);
            assert_eq!(s.l(d as i64), TruncatedSeries::one(3, 3));
        }
    }

    #[test]
    fn loop_hypermap_is_the_first_term_of_f1() {
        let s = solve_wl(1, 2, 2);
        let f = s.f_d();
        let x1 = crate::series::Monomial::x(2, 1);
        assert_eq!(f.coefficient(&x1), rational(1));
    }

    #[test]
    fn empty_degree_sets_give_the_trivial_system() {
        let sys = emit_system(3, &[], &[]);
        assert_eq!(sys.to_string(), "L_3 = 1\n");
        assert_eq!(SymbolicSystem::new(3, &[], &[]).f_d(), Poly::zero());
    }
}
