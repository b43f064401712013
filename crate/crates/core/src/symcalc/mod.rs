//! Exact exterior calculus on coordinate charts.

pub mod chart;
pub mod coeff;
pub mod form;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod vector;

pub use chart::{Chart, ChartRef, CoordKind};
pub use coeff::Coeff;
pub use form::{BasicReport, DiffForm, Mask};
pub use parse::{parse_coeff, parse_form, parse_scalar, parse_vector};
pub use poly::{Mono, Poly};
pub use scalar::GaussianRational;
pub use vector::VectorField;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("invalid chart: {0}")]
    Chart(String),
    #[error("chart mismatch: '{0}' vs '{1}'")]
    ChartMismatch(String, String),
    #[error("denominator vanishes at the point for coefficient {0}")]
    Pole(String),
    #[error("invalid evaluation point: {0}")]
    Point(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{0}")]
    Basic(String),
}
