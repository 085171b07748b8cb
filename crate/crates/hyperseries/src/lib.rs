//! Exact truncated power series and the fixed-point systems that count
//! planar hypermaps by ingirth and face degrees, plane and annular.

pub mod laurent;
pub mod series;
pub mod symbolic;
pub mod system;

pub use laurent::{Coefficient, Laurent};
pub use series::{rational, Monomial, TruncatedSeries, TsvError};
pub use symbolic::{Atom, ParseError, Poly, PolySystem};
pub use system::{
    emit_system, h_poly, solve_wl, AnnularSeries, FaceColor, SymbolicSystem, WlSolution,
};
