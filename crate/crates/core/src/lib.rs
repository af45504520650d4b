//! Admissible graphs, their pre-Lie algebra, and a Maurer–Cartan solver for
//! universal star products.
//!
//! * [`graphs`]: labeled graphs, canonical orientation classes, enumeration.
//! * [`algebra`]: graph vectors, insertion, bracket, `∂`, `σ`, wedge bases.
//! * [`mc`]: the order-by-order solver `m_n = P(σ(D_n))`.
//! * [`kontsevich`]: evaluation of graphs as bidifferential operators.
//! * [`homology`]: exact cohomology dimensions of `(kG_{n,•}, ∂)`.
//!
//! Everything is generic over a [`Scalar`] field; the aliases below fix the
//! exact rational and the floating-point instantiations.

pub mod algebra;
pub mod graphs;
pub mod homology;
pub mod kontsevich;
pub mod mc;
pub mod scalar;

pub use algebra::{AlgebraError, AntipodeSign, GraphVector, IndexTriple, SigmaNorm};
pub use graphs::{GraphError, LabeledGraph, Sign, SignedGraphClass, Target};
pub use homology::HomologyError;
pub use kontsevich::{KontsevichError, Poly, PoissonStructure};
pub use mc::{McError, Projection, SolveOptions, StarSeries};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;

pub type GraphVectorQ = GraphVector<Rational>;
pub type StarSeriesQ = StarSeries<Rational>;
pub type PolyQ = Poly<Rational>;
pub type PoissonQ = PoissonStructure<Rational>;

pub type GraphVectorF = GraphVector<f64>;
pub type StarSeriesF = StarSeries<f64>;
pub type PolyF = Poly<f64>;
pub type PoissonF = PoissonStructure<f64>;
