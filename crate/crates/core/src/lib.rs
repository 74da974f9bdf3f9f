//! Fair covering on graphs.
//!
//! * Colorful Vertex Cover: pick few vertices so that, for every color `t`, at
//!   least `r_t` edges of color `t` touch a chosen vertex. [`cvc`] gives an LP
//!   rounding algorithm with cost at most `2·OPT + ω`, and a `(2+ε)` wrapper.
//! * Colorful Edge Cover: pick few edges so that at least `r_x` vertices of
//!   each color `x` are touched. [`cec`] solves it exactly by reducing to
//!   budgeted matching and then to tropical matching ([`matching`]).
//!
//! [`geometry`] translates point/line covering instances into both problems
//! and [`verify`] holds exhaustive oracles and seeded instance generators.
//!
//! The numeric core is generic over an exact [`Scalar`]; the aliases below fix
//! it to arbitrary-precision rationals.

pub mod cec;
pub mod cvc;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod lp;
pub mod matching;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    Color, CoverageRequirements, CvcEdge, CvcInstance, EdgeEnds, EdgeId, EdgeSet, Matching,
    VertexColoredGraph, VertexId, VertexSet,
};
pub use scalar::Scalar;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
pub type LinearProgram = lp::LinearProgram<Rational>;
pub type LpSolution = lp::LpSolution<Rational>;
pub type AxisLine = geometry::AxisLine<Rational>;
pub type ColoredPoint = geometry::ColoredPoint<Rational>;
