//! Interaction graphs for multiplicative additive linear logic.
//!
//! Weighted directed multigraphs are composed by *execution* (alternating
//! path composition) and compared by a parametrized *measurement* over
//! alternating circuits.  On top of that sit projects (a wager plus a formal
//! sum of graphs), finitely witnessed behaviours, the MALL connectives, a
//! locative category of morphisms and a small proof interpreter.
//!
//! All weights and coefficients are exact rationals; logarithmic
//! measurements are kept symbolic (see [`Scalar`]) so identities between
//! them are checked exactly.

pub mod cat;
pub mod conduct;
pub mod error;
pub mod gen;
pub mod graph;
pub mod json;
pub mod matrix;
pub mod measure;
pub mod project;
pub mod rational;
pub mod scalar;
pub mod suites;

pub type Rational = num_rational::BigRational;

pub use conduct::{BehaviourKind, WitnessedBehaviour};
pub use error::{Error, Result};
pub use graph::{Circuit, Color, Edge, PEdge, Path, Vertex, WeightedGraph};
pub use matrix::{BoolMatrix, WeightMatrix};
pub use measure::{CircuitMap, MeasureParam, Measurement, WeightTable};
pub use project::{Delocation, Project, SlicedGraph};
pub use scalar::{ExtReal, Scalar};
