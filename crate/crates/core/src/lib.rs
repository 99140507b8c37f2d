//! Polynomial approximation schemes in function spaces on the unit disk.
//!
//! The crate provides, at desk scale:
//!
//! - truncated power-series arithmetic and circle sampling ([`poly`]);
//! - function-space handles with norms and inner products: weighted
//!   coefficient spaces, Gram-presented Hilbert spaces, the sampled sup norm,
//!   and de Branges-Rovnyak spaces ([`spaces`], [`hb`]);
//! - approximation schemes: partial sums, Cesaro and de la Vallee Poussin
//!   means, triangular summability arrays, Gram projections, and schemes
//!   assembled from dense-sample approximants with residual certificates
//!   ([`schemes`]);
//! - the weighted coefficient-model constructor with prescribed monomial
//!   norms and its inclusion/membership bounds ([`embedding`]);
//! - divergence diagnostics: Lebesgue constants, operator-norm estimates,
//!   gliding-hump witnesses, growth-trend fits ([`diagnostics`]);
//! - JSON descriptors for spaces, arrays, and embedding specs
//!   ([`descriptor`]).
//!
//! All numerics are generic over the real scalar (`f32`/`f64`) through the
//! [`scalar::Scalar`] trait; the `*64` aliases below fix `f64`, which is what
//! the command-line tools use.

pub mod descriptor;
pub mod diagnostics;
pub mod embedding;
pub mod error;
pub mod hb;
mod linalg;
pub mod poly;
mod quad;
mod roots;
pub mod scalar;
pub mod schemes;
pub mod spaces;

pub use error::{Error, Result};
pub use poly::{CircleGrid, TaylorPoly};
pub use scalar::{Scalar, C};
pub use spaces::{GramMatrix, SpaceHandle, WeightSequence};

/// Complex double-precision scalar.
pub type C64 = num_complex::Complex<f64>;
/// Double-precision Taylor polynomial.
pub type Poly64 = TaylorPoly<f64>;
/// Double-precision space handle.
pub type Space64 = SpaceHandle<f64>;
/// Double-precision Gram matrix.
pub type Gram64 = GramMatrix<f64>;
/// Double-precision scheme.
pub type Scheme64 = schemes::Scheme<f64>;
/// Double-precision weight sequence.
pub type Weights64 = WeightSequence<f64>;
