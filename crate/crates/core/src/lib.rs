//! Exact arithmetic toolkit for the generalized Ramanujan–Nagell equation
//!
//! ```text
//! D1·x² + D2^m = 2^(n+2),   x, m, n ≥ 1
//! ```
//!
//! with `D1`, `D2` coprime odd positive integers. The crate enumerates and
//! classifies solutions two ways: a brute-force oracle over `(n, m)`, and a
//! structural route through least solutions of `D1·X² + D2·Y² = 2^(Z+2)`,
//! Lehmer numbers and their primitive divisors. Both routes are kept and any
//! disagreement is reported rather than resolved.
//!
//! Modules:
//!
//! - [`arith`]: gcd, Jacobi symbol, integer roots, perfect powers, factoring.
//! - [`ring`]: exact arithmetic in biquadratic fields `Q(√p, √q)`.
//! - [`fiblucas`]: Fibonacci/Lucas numbers and `u² − 5v² = ±4`.
//! - [`lehmer`]: Lehmer numbers, primitive divisors, the defective-pair table.
//! - [`qforms`]: least solutions of `D1·X² + D2·Y² = 2^(Z+2)` and their powers.
//! - [`auxdioph`]: bounded verifiers for the auxiliary equations.
//! - [`classifier`]: brute force, structural classification, census scans.

pub mod arith;
pub mod auxdioph;
pub mod classifier;
mod error;
pub mod serde_dec;
pub mod fiblucas;
pub mod lehmer;
pub mod qforms;
pub mod ring;

pub use arith::Integer;
pub use error::{Error, Result};
