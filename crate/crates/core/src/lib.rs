//! Exact generalized geometry: rational-function exterior calculus, linear
//! algebra on `V ⊕ V*`, twisted Courant brackets and pure spinors, torus
//! reduction with T-duality checks, and Lie bialgebra utilities.

pub mod bialg;
pub mod checks;
pub mod courant;
pub mod genlin;
pub mod reduction;
pub mod symcalc;

pub use checks::{Check, CheckList};
pub use symcalc::{Chart, ChartRef, Coeff, CoordKind, DiffForm, GaussianRational, SymError, VectorField};
