//! Congruence subgroup invariants and effective height bounds for the
//! j-invariant of S-integral points on modular curves.
//!
//! - [`sl2`]: exact arithmetic, enumeration and subgroup closure in SL2(Z/N).
//! - [`modcurve`]: cusps, elliptic points and genus of `X_Γ`, the
//!   elliptic-generated subgroup `Γ~`, and the choice of effective theorem.
//! - [`xreal`]: extended-range reals with directed rounding.
//! - [`bound`]: the height bounds, evaluated in log space.

pub mod arith;
pub mod bound;
pub mod error;
pub mod modcurve;
pub mod sl2;
pub mod xreal;

pub use error::{Error, Result};
