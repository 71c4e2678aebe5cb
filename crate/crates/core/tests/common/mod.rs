#![allow(dead_code)]

pub mod grid;
pub mod oracle;
pub mod orbits;

use dashu_int::IBig;
use jbound_core::xreal::XReal;
use num_traits::ToPrimitive;

/// The exact value of `x` as an oracle float.
pub fn to_oracle(x: &XReal) -> oracle::F {
    let (sig, exp) = x.to_binary_parts();
    let sig: IBig = sig.to_string().parse().expect("decimal integer");
    oracle::F::from_parts(sig, exp.to_isize().expect("exponent fits isize"))
}
