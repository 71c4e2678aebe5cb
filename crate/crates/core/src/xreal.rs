//! Extended-range reals with directed rounding.
//!
//! An [`XReal`] is `m * 2^e` with an arbitrary-precision mantissa
//! `1/2 <= |m| < 1` (or `m = 0`) and a big-integer exponent `e`, so values
//! such as `exp(10^12)` are ordinary citizens. All arithmetic goes through
//! an [`ArithCtx`], which fixes the mantissa precision and the rounding
//! direction. Every primitive step is correctly rounded in that direction,
//! so a formula that is monotone in each intermediate quantity yields a
//! guaranteed upper (`Up`) or lower (`Down`) bound.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest binary exponent of an argument accepted by [`ArithCtx::exp`].
const EXP_ARG_MAX_BITS: u64 = 1 << 16;

/// Direction in which every operation rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Toward `+inf`: results never underestimate.
    Up,
    /// Toward `-inf`: results never overestimate.
    Down,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Up => Rounding::Down,
            Rounding::Down => Rounding::Up,
        }
    }

    fn mode(self) -> RoundingMode {
        match self {
            Rounding::Up => RoundingMode::Up,
            Rounding::Down => RoundingMode::Down,
        }
    }
}

impl fmt::Display for Rounding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rounding::Up => write!(f, "up"),
            Rounding::Down => write!(f, "down"),
        }
    }
}

/// `mant * 2^exp`, see the module docs.
#[derive(Clone, Debug)]
pub struct XReal {
    mant: BigFloat,
    exp: BigInt,
    rounding: Rounding,
}

impl XReal {
    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative() && !self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.mant.is_zero() && self.mant.is_positive()
    }

    /// The direction of the operation that produced this value.
    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; zero for `x = 0`.
    pub fn binary_exponent(&self) -> &BigInt {
        &self.exp
    }

    /// Exact decomposition `x = significand * 2^exponent`.
    pub fn to_binary_parts(&self) -> (BigInt, BigInt) {
        if self.is_zero() {
            return (BigInt::zero(), BigInt::zero());
        }
        let (words, _, sign, e, _) = self.mant.as_raw_parts().expect("finite mantissa");
        let magnitude = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let sig = BigInt::from_biguint(
            if sign == Sign::Neg {
                BigSign::Minus
            } else {
                BigSign::Plus
            },
            magnitude,
        );
        let shift = BigInt::from(words.len() * WORD_BIT_SIZE);
        (sig, &self.exp + BigInt::from(e) - shift)
    }

    /// Nearest `f64`, saturating to `±inf` outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (words, _, sign, _, _) = self.mant.as_raw_parts().expect("finite mantissa");
        let top = *words.last().expect("nonempty mantissa") as f64 / 2f64.powi(64);
        let m = if sign == Sign::Neg { -top } else { top };
        match self.exp.to_i32() {
            Some(e) if e.abs() < 2000 => m * 2f64.powi(e),
            _ if self.exp.is_negative() => 0.0 * m,
            _ => m * f64::INFINITY,
        }
    }

    /// Compares the represented values, ignoring the rounding tag.
    pub fn cmp_value(&self, other: &XReal) -> Ordering {
        let sign = |x: &XReal| -> i8 {
            if x.is_zero() {
                0
            } else if x.is_negative() {
                -1
            } else {
                1
            }
        };
        let (sa, sb) = (sign(self), sign(other));
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        let by_magnitude = match self.exp.cmp(&other.exp) {
            Ordering::Equal => {
                let c = self
                    .mant
                    .abs()
                    .cmp(&other.mant.abs())
                    .expect("finite mantissas");
                c.cmp(&0)
            }
            o => o,
        };
        if sa > 0 {
            by_magnitude
        } else {
            by_magnitude.reverse()
        }
    }

    /// Negation is exact; the tag flips with the sign of the error.
    pub fn neg(&self) -> XReal {
        XReal {
            mant: self.mant.neg(),
            exp: self.exp.clone(),
            rounding: self.rounding.flip(),
        }
    }

    /// `|x|` (exact).
    pub fn abs(&self) -> XReal {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn zero(rounding: Rounding) -> XReal {
        XReal {
            mant: BigFloat::from_word(0, WORD_BIT_SIZE),
            exp: BigInt::zero(),
            rounding,
        }
    }

    /// Mantissa placed at binary exponent `e` relative to the XReal exponent.
    fn mant_at(&self, e: i32) -> BigFloat {
        let mut m = self.mant.clone();
        if !m.is_zero() {
            m.set_exponent(e);
        }
        m
    }

    /// The value as a plain `BigFloat`, if its exponent fits.
    fn to_bigfloat(&self) -> Option<BigFloat> {
        if self.is_zero() {
            return Some(self.mant.clone());
        }
        let e = self.exp.to_i32()?;
        (e.abs() < i32::MAX / 4).then(|| self.mant_at(e))
    }
}

impl PartialEq for XReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{} * 2^{}", self.mant, self.exp)
    }
}

/// Precision, rounding direction and constant cache for [`XReal`] arithmetic.
pub struct ArithCtx {
    prec: usize,
    rounding: Rounding,
    consts: Consts,
}

impl fmt::Debug for ArithCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithCtx")
            .field("prec", &self.prec)
            .field("rounding", &self.rounding)
            .finish()
    }
}

impl ArithCtx {
    /// `prec` is the mantissa precision in bits, rounded up to a multiple of
    /// the machine word.
    pub fn new(prec: usize, rounding: Rounding) -> Result<Self> {
        if prec == 0 || prec > 1 << 24 {
            return Err(Error::PrecisionLoss(format!(
                "mantissa precision {prec} out of range"
            )));
        }
        let consts = Consts::new()
            .map_err(|e| Error::InvariantViolation(format!("constant cache: {e:?}")))?;
        Ok(ArithCtx {
            prec: prec.div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE,
            rounding,
            consts,
        })
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    fn rm(&self) -> RoundingMode {
        self.rounding.mode()
    }

    /// Runs `f` with the rounding direction temporarily set to `r`.
    pub fn with_rounding<T>(&mut self, r: Rounding, f: impl FnOnce(&mut Self) -> T) -> T {
        let saved = self.rounding;
        self.rounding = r;
        let out = f(self);
        self.rounding = saved;
        out
    }

    /// Runs `f` with the opposite rounding direction; used for quantities
    /// that enter a formula with a negative sign.
    pub fn flipped<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        let r = self.rounding.flip();
        self.with_rounding(r, f)
    }

    /// Runs `f` with `extra` more bits of mantissa precision.
    pub fn with_extra_precision<T>(&mut self, extra: usize, f: impl FnOnce(&mut Self) -> T) -> T {
        let saved = self.prec;
        self.prec = (saved + extra).div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE;
        let out = f(self);
        self.prec = saved;
        out
    }

    fn normalize(&self, v: BigFloat, extra: BigInt) -> Result<XReal> {
        if v.is_nan() || v.is_inf() {
            return Err(Error::InvariantViolation(format!(
                "non-finite intermediate result {v}"
            )));
        }
        if v.is_zero() {
            return Ok(XReal::zero(self.rounding));
        }
        let e = v.exponent().expect("finite");
        let mut mant = v;
        mant.set_exponent(0);
        Ok(XReal {
            mant,
            exp: extra + BigInt::from(e),
            rounding: self.rounding,
        })
    }

    /// Rounds `x` to the context precision in the context direction.
    pub fn round(&self, x: &XReal) -> XReal {
        let mut mant = x.mant.clone();
        mant.set_precision(self.prec, self.rm())
            .expect("valid precision");
        self.normalize(mant, x.exp.clone()).expect("finite")
    }

    pub fn zero(&self) -> XReal {
        XReal::zero(self.rounding)
    }

    pub fn from_u64(&self, n: u64) -> XReal {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_i64(&self, n: i64) -> XReal {
        self.from_bigint(&BigInt::from(n))
    }

    /// `n` rounded to the context precision.
    pub fn from_bigint(&self, n: &BigInt) -> XReal {
        if n.is_zero() {
            return self.zero();
        }
        let words = n.magnitude().to_u64_digits();
        let sign = if n.is_negative() {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let bits = (words.len() * WORD_BIT_SIZE) as i32;
        let v = BigFloat::from_words(&words, sign, bits);
        let x = self.normalize(v, BigInt::zero()).expect("finite");
        self.round(&x)
    }

    /// `num / den` for `den != 0`, rounded once.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<XReal> {
        if den.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let exact = |n: &BigInt| exact_ctx(n.bits() as usize, self.rounding).from_bigint(n);
        self.div(&exact(num), &exact(den))
    }

    /// An `f64` taken at face value (exactly).
    pub fn from_f64(&self, x: f64) -> Result<XReal> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite input {x}")));
        }
        let v = BigFloat::from_f64(x, self.prec.max(64));
        self.normalize(v, BigInt::zero())
    }

    pub fn add(&self, x: &XReal, y: &XReal) -> XReal {
        if x.is_zero() {
            return self.round(y);
        }
        if y.is_zero() {
            return self.round(x);
        }
        let (big, small) = if x.exp >= y.exp { (x, y) } else { (y, x) };
        let gap = &big.exp - &small.exp;
        let limit = self.prec as u64 + 4;
        let aligned = match gap.to_u64() {
            Some(g) if g <= limit => small.mant_at(-(g as i32)),
            _ => {
                // |small| < ulp(big) / 16. Moving small away from zero is
                // sound when it pushes in the rounding direction; otherwise
                // dropping it is.
                let pushes_our_way = match self.rounding {
                    Rounding::Up => small.is_positive(),
                    Rounding::Down => small.is_negative(),
                };
                if !pushes_our_way {
                    return self.round(big);
                }
                small.mant_at(-(limit as i32))
            }
        };
        let sum = big.mant.add(&aligned, self.prec, self.rm());
        self.normalize(sum, big.exp.clone()).expect("finite")
    }

    pub fn sub(&self, x: &XReal, y: &XReal) -> XReal {
        self.add(x, &y.neg())
    }

    pub fn mul(&self, x: &XReal, y: &XReal) -> XReal {
        if x.is_zero() || y.is_zero() {
            return self.zero();
        }
        let p = x.mant.mul(&y.mant, self.prec, self.rm());
        self.normalize(p, &x.exp + &y.exp).expect("finite")
    }

    pub fn div(&self, x: &XReal, y: &XReal) -> Result<XReal> {
        if y.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if x.is_zero() {
            return Ok(self.zero());
        }
        let q = x.mant.div(&y.mant, self.prec, self.rm());
        self.normalize(q, &x.exp - &y.exp)
    }

    /// `k * x` for an exact integer `k`.
    pub fn scale(&self, k: &BigInt, x: &XReal) -> XReal {
        let k = exact_ctx(k.bits() as usize, self.rounding).from_bigint(k);
        self.mul(&k, x)
    }

    /// `ln 2` rounded in the context direction.
    pub fn ln2(&mut self) -> XReal {
        let (p, rm) = (self.prec, self.rm());
        let v = self.consts.ln_2(p, rm);
        self.normalize(v, BigInt::zero()).expect("finite")
    }

    /// `ln 10` rounded in the context direction.
    pub fn ln10(&mut self) -> XReal {
        let (p, rm) = (self.prec, self.rm());
        let v = self.consts.ln_10(p, rm);
        self.normalize(v, BigInt::zero()).expect("finite")
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&mut self, x: &XReal) -> Result<XReal> {
        if !x.is_positive() {
            return Err(Error::Domain(format!(
                "logarithm of non-positive value {x}"
            )));
        }
        let exp_bits = x.exp.bits() as usize;
        let out_prec = self.prec;
        let wp = out_prec + exp_bits + 2 * WORD_BIT_SIZE;
        let rm = self.rm();

        let half = BigFloat::from_f64(0.5, WORD_BIT_SIZE);
        let mant_is_half = x.mant.cmp(&half) == Some(0);
        let ln_mant = if mant_is_half {
            None
        } else {
            Some(x.mant.ln(wp, rm, &mut self.consts))
        };
        // ln(m 2^e) = ln m + e ln 2, or (e - 1) ln 2 when m = 1/2.
        let e = if mant_is_half {
            &x.exp - 1
        } else {
            x.exp.clone()
        };
        let mut acc = match ln_mant {
            Some(v) => self.normalize(v, BigInt::zero())?,
            None => self.zero(),
        };
        if !e.is_zero() {
            let ln2 = self.with_extra_precision(wp - out_prec, |c| {
                if e.is_positive() {
                    c.ln2()
                } else {
                    c.flipped(|c| c.ln2())
                }
            });
            let term = self.with_extra_precision(wp - out_prec, |c| c.scale(&e, &ln2));
            acc = self.with_extra_precision(wp - out_prec, |c| c.add(&term, &acc));
        }
        Ok(self.round(&acc))
    }

    /// `e^x`. Arguments are limited to `|x| < 2^65536`.
    pub fn exp(&mut self, x: &XReal) -> Result<XReal> {
        if x.is_zero() {
            return Ok(self.from_u64(1));
        }
        let arg_bits = x.exp.to_i64().unwrap_or(i64::MAX);
        if arg_bits > EXP_ARG_MAX_BITS as i64 {
            return Err(Error::PrecisionLoss(format!(
                "exponential of an argument with binary exponent {}",
                x.exp
            )));
        }
        let out_prec = self.prec;
        let int_bits = arg_bits.max(0) as usize;
        let wp = (out_prec + int_bits + 2 * WORD_BIT_SIZE).div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE;
        let rm = self.rm();
        let xv = if arg_bits < -(1 << 20) {
            // e^x = 1 + x + ... with |x| < 2^-(2^20).
            return Ok(self.round(&self.add(&self.from_u64(1), x)));
        } else {
            x.to_bigfloat().expect("exponent in range")
        };

        // x = k ln 2 + r with an integer k; any k is exact enough since r is
        // computed with directed rounding at working precision.
        let ln2_near = self.consts.ln_2(wp, RoundingMode::ToEven);
        let k_float = xv.div(&ln2_near, wp, RoundingMode::ToEven).floor();
        let k = bigfloat_integer(&k_float);
        let r = if k.is_zero() {
            xv
        } else {
            // r = x - k ln 2: round k ln 2 against our direction.
            let against = self.rounding.flip();
            let ln2_dir = if k.is_positive() {
                against
            } else {
                self.rounding
            };
            let ln2 = self.consts.ln_2(wp, ln2_dir.mode());
            let k_ln2 = k_float.mul(&ln2, wp, against.mode());
            xv.sub(&k_ln2, wp, rm)
        };
        let er = r.exp(wp, rm, &mut self.consts);
        let v = self.normalize(er, k)?;
        Ok(self.round(&v))
    }

    /// `x^k` for a positive `x` and an exact integer `k >= 0`, via `exp(k ln x)`.
    pub fn pow_int(&mut self, x: &XReal, k: &BigInt) -> Result<XReal> {
        let l = self.ln(x)?;
        let kl = self.scale(k, &l);
        self.exp(&kl)
    }
}

/// An integral `BigFloat` as a `BigInt`.
fn bigfloat_integer(v: &BigFloat) -> BigInt {
    if v.is_zero() {
        return BigInt::zero();
    }
    let (words, _, sign, e, _) = v.as_raw_parts().expect("finite");
    let magnitude = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    let shift = (words.len() * WORD_BIT_SIZE) as i64 - e as i64;
    let magnitude = if shift >= 0 {
        magnitude >> shift as usize
    } else {
        magnitude << (-shift) as usize
    };
    let n = BigInt::from(magnitude);
    if sign == Sign::Neg {
        -n
    } else {
        n
    }
}

/// Decimal scientific rendering `d.ddd...e±YYYY` of `x` with `sig` significant
/// digits, rounded in the direction of `ctx` (so an `Up` rendering is never
/// below `x`). The exponent has at least four digits.
pub fn render_scientific(ctx: &mut ArithCtx, x: &XReal, sig: usize) -> Result<String> {
    let sig = sig.max(1);
    if x.is_zero() {
        return Ok(format!("{}e+0000", zero_digits(sig)));
    }
    let negative = x.is_negative();
    // Round the magnitude down for negative values in Up mode, and so on.
    let mag_dir = if negative {
        ctx.rounding().flip()
    } else {
        ctx.rounding()
    };
    let a = x.abs();
    let guard = a.exp.bits() as usize + 2 * WORD_BIT_SIZE + 4 * sig;

    let (la, guess) = ctx.with_extra_precision(guard, |c| -> Result<(XReal, BigInt)> {
        let la = c.ln(&a)?;
        let l10 = c.ln10();
        Ok((la.clone(), floor_xreal(&c.div(&la, &l10)?)))
    })?;
    let ten_sig = BigInt::from(10u32).pow(sig as u32);
    let body = if guess.abs() <= BigInt::from(EXACT_DECIMAL_LIMIT) {
        decimal_digits_exact(ctx, &a, guess, sig, mag_dir)
    } else {
        ctx.with_extra_precision(guard, |c| {
            c.with_rounding(mag_dir, |c| decimal_digits_via_logs(c, &la, guess, sig))
        })?
    };
    let body = if body.0 >= ten_sig {
        (&ten_sig / 10u32, body.1 + 1)
    } else {
        body
    };

    let (digits, y) = body;
    let ds = digits.to_string();
    let mantissa = if sig == 1 {
        ds
    } else {
        format!("{}.{}", &ds[..1], &ds[1..])
    };
    let exp_sign = if y.is_negative() { '-' } else { '+' };
    Ok(format!(
        "{}{}e{}{:0>4}",
        if negative { "-" } else { "" },
        mantissa,
        exp_sign,
        y.abs().to_string()
    ))
}

/// Decimal exponents up to this size are located by exact comparison.
const EXACT_DECIMAL_LIMIT: u32 = 20_000;

/// A context wide enough to hold `bits`-bit values exactly.
fn exact_ctx(bits: usize, rounding: Rounding) -> ArithCtx {
    ArithCtx {
        prec: (bits + WORD_BIT_SIZE).div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE,
        rounding,
        consts: Consts::new().expect("constant cache"),
    }
}

fn mantissa_bits(x: &XReal) -> usize {
    x.mant
        .as_raw_parts()
        .map(|(w, ..)| w.len() * WORD_BIT_SIZE)
        .unwrap_or(WORD_BIT_SIZE)
}

/// Exact sign of `a - 10^y` for positive `a`.
fn cmp_pow10(a: &XReal, y: &BigInt) -> Ordering {
    let k = y.abs().to_u32().expect("bounded decimal exponent");
    let p = BigInt::from(10u32).pow(k);
    let c = exact_ctx(mantissa_bits(a) + p.bits() as usize, Rounding::Up);
    let pv = c.from_bigint(&p);
    if y.is_negative() {
        c.mul(a, &pv).cmp_value(&c.from_u64(1))
    } else {
        a.cmp_value(&pv)
    }
}

/// Leading `sig` digits of `a` and its decimal exponent, by exact scaling.
fn decimal_digits_exact(
    ctx: &ArithCtx,
    a: &XReal,
    guess: BigInt,
    sig: usize,
    dir: Rounding,
) -> (BigInt, BigInt) {
    let mut y = guess;
    while cmp_pow10(a, &y) == Ordering::Less {
        y -= 1;
    }
    while cmp_pow10(a, &(&y + 1)) != Ordering::Less {
        y += 1;
    }
    // digits = a * 10^(sig - 1 - y), rounded in `dir`.
    let shift = BigInt::from(sig as u64 - 1) - &y;
    let k = shift.abs().to_u32().expect("bounded decimal exponent");
    let p = BigInt::from(10u32).pow(k);
    let c = exact_ctx(mantissa_bits(a) + p.bits() as usize + ctx.prec, dir);
    let pv = c.from_bigint(&p);
    let scaled = if shift.is_negative() {
        c.div(a, &pv).expect("nonzero power of ten")
    } else {
        c.mul(a, &pv)
    };
    let digits = match dir {
        Rounding::Up => ceil_xreal(&scaled),
        Rounding::Down => floor_xreal(&scaled),
    };
    (digits, y)
}

/// As [`decimal_digits_exact`], through `ln a` for astronomically large or
/// small values. `c` already rounds the magnitude in the wanted direction.
fn decimal_digits_via_logs(
    c: &mut ArithCtx,
    la: &XReal,
    guess: BigInt,
    sig: usize,
) -> Result<(BigInt, BigInt)> {
    let mut y = guess;
    for _ in 0..4 {
        // X = a / 10^y through ln X = ln a - y ln 10.
        let ln10 = if y.is_positive() {
            c.flipped(|c| c.ln10())
        } else {
            c.ln10()
        };
        let y_ln10 = c.flipped(|c| c.scale(&y, &ln10));
        let ln_x = c.sub(la, &y_ln10);
        let big_x = c.exp(&ln_x)?;
        if big_x >= c.from_u64(10) {
            y += 1;
            continue;
        }
        if big_x < c.from_u64(1) {
            y -= 1;
            continue;
        }
        let scale = BigInt::from(10u32).pow(sig as u32 - 1);
        let scaled = c.scale(&scale, &big_x);
        let digits = match c.rounding() {
            Rounding::Up => ceil_xreal(&scaled),
            Rounding::Down => floor_xreal(&scaled),
        };
        return Ok((digits, y));
    }
    Err(Error::InvariantViolation(
        "decimal exponent search did not settle".into(),
    ))
}

fn zero_digits(sig: usize) -> String {
    if sig == 1 {
        "0".into()
    } else {
        format!("0.{}", "0".repeat(sig - 1))
    }
}

/// `floor(x)` for values whose integer part fits comfortably in memory.
pub fn floor_xreal(x: &XReal) -> BigInt {
    let (sig, e) = x.to_binary_parts();
    if !e.is_negative() {
        let shift = e.to_usize().expect("reasonable exponent");
        return sig << shift;
    }
    let shift = (-e).to_usize().unwrap_or(usize::MAX);
    if shift > sig.bits() as usize {
        return if sig.is_negative() {
            -BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    // Arithmetic shift on BigInt rounds toward -inf.
    sig >> shift
}

pub fn ceil_xreal(x: &XReal) -> BigInt {
    -floor_xreal(&x.neg())
}
