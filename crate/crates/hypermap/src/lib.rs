//! Planar hypermaps and the bijective machinery around them: hyperorientations,
//! hypermobiles, the master bijections, canonical charge-weighted orientations
//! computed from hyperflows, girth and charge constraints, and brute-force
//! enumeration used as ground truth.

pub mod bijection;
pub mod canonical;
pub mod charge;
pub mod counting;
pub mod dot;
pub mod error;
pub mod flow;
pub mod io;
pub mod map;
pub mod mobile;
pub mod oracle;
pub mod orientation;
pub mod surgery;

pub use error::{HypermapError, Result};
pub use map::{
    bicolor, CanonicalKey, Color, CombinatorialMap, Dart, Hypermap, Root, RootKind, RootedHypermap,
};

/// Exact rational numbers used for weights and charges.
pub type Rational = num_rational::Ratio<i128>;
