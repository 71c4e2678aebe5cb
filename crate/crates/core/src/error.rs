use thiserror::Error;

/// Errors raised by the group, curve and bound computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level must be at least 2, got {0}")]
    InvalidLevel(u64),

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("matrix [[{a}, {b}], [{c}, {d}]] has determinant {det} mod {level}, expected 1")]
    NotInSl2 {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        det: i64,
        level: u32,
    },

    #[error("|SL2(Z/{level})| = {order} exceeds the enumeration cap {cap}")]
    CapExceeded { level: u32, order: u128, cap: u64 },

    #[error("subgroup containment violated: {0}")]
    NotContained(String),

    #[error(
        "no effective theorem applies: X_Gamma has {nu_inf} cusp(s), X_Gamma~ has {tilde_nu_inf}"
    )]
    Inapplicable { nu_inf: u64, tilde_nu_inf: u64 },

    #[error("invalid number field data: {0}")]
    InvalidField(String),

    #[error("invalid place set: {0}")]
    InvalidPlaces(String),

    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
