//! Exact-arithmetic toolkit for symmetric distributions on the Boolean cube.
//!
//! Everything is computed over arbitrary-precision rationals: Krawtchouk
//! tables, weight laws and level-bias profiles of symmetric distributions,
//! symmetric tests, an exact simplex over the k-wise uniform moment polytope,
//! real-rootedness certificates, and theorem-level verification harnesses.

pub mod arith;
pub mod config;
pub mod error;
pub mod grid;
pub mod io;
pub mod krawtchouk;
pub mod momentlp;
pub mod poly;
pub mod realroots;
pub mod simplex;
pub mod symdist;
pub mod symtest;
pub mod verify;

pub use config::{Config, Format};
pub use error::{Error, Result};
pub use krawtchouk::{BoundCertificate, EntropyCheck, KrawtchoukTable};
pub use momentlp::{LpResult, MomentLp, Sense};
pub use poly::Poly;
pub use realroots::{AttainableTuple, RealTuple};
pub use symdist::{LevelProfile, SymmetricDist, WeightPmf};
pub use symtest::{LevelCoeffs, SymmetricTest};
pub use verify::{Claim, VerdictReport};

/// Exact rational number.
pub type Rational = num_rational::BigRational;
