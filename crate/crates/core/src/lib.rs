//! Exact computation of Kac polynomials of quivers through Hua's formula,
//! their parametric forms in arrow multiplicities, and stable limits.

pub mod algebra;
pub mod asymptotics;
pub mod combinatorics;
pub mod distribution;
pub mod error;
pub mod hua;
pub mod parametric;
pub mod quiver;
pub mod series;

pub use error::{KacError, Result};

/// Version tag stored with cached results; bump-on-release invalidates caches.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
