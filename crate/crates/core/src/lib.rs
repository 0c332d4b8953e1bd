//! Numerical laboratory for fractional calculus of radially symmetric
//! functions: interpolation-exponent arithmetic, Hankel-based fractional
//! derivatives and Riesz potentials, pointwise-decay and weighted-integral
//! probes, and a variational computation of the constrained best
//! interpolation constant on the positivity cone.

pub mod bessel;
pub mod calculus;
pub mod convention;
pub mod corpus;
pub mod direct;
pub mod error;
pub mod estimates;
pub mod exponents;
pub mod fit;
pub mod grid;
pub mod hankel;
pub mod maximizer;
pub mod mollifier;
pub mod profile;
pub mod quad;
pub mod report;

pub use calculus::RadialCalculus;
pub use convention::{bridge, riesz_constant, sphere_area, ConventionRecord};
pub use error::{Error, Result};
pub use exponents::ParamSet;
pub use grid::{GridKind, GridMeta, RadialGrid};
pub use profile::{RadialProfile, SpectralProfile};
