//! Effective height bounds for S-integral points, evaluated in log space.
//!
//! Every quantity is a natural logarithm carried as an [`XReal`]. The
//! functions take the [`ArithCtx`] that fixes precision and rounding
//! direction; with [`Rounding::Up`] each result is a guaranteed upper bound
//! for the exact value of the formula, with [`Rounding::Down`] a lower one.
//! Intermediate steps run with extra guard bits and the result is rounded
//! once more to the context precision at the end.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_divisors, prime_power_base, totient};
use crate::error::{Error, Result};
use crate::modcurve::{applicability, Verdict};
use crate::sl2::{Level, SubgroupImage};
use crate::xreal::{ArithCtx, Rounding, XReal};

const GUARD_BITS: usize = 64;

/// Degree and absolute discriminant of the number field `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldSpec {
    pub degree: u64,
    pub abs_disc: u64,
}

impl NumberFieldSpec {
    pub fn new(degree: u64, abs_disc: u64) -> Result<Self> {
        let spec = NumberFieldSpec { degree, abs_disc };
        spec.validate()?;
        Ok(spec)
    }

    /// `Q` itself.
    pub fn rationals() -> Self {
        NumberFieldSpec {
            degree: 1,
            abs_disc: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 || self.degree > 1 << 20 {
            return Err(Error::InvalidField(format!(
                "degree {} out of range 1..=2^20",
                self.degree
            )));
        }
        if self.abs_disc == 0 {
            return Err(Error::InvalidField("discriminant must be nonzero".into()));
        }
        Ok(())
    }
}

/// A finite place of `K` above the prime `p`, with norm `p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitePlace {
    pub p: u64,
    pub f: u32,
}

/// The set `S`: all archimedean places (as a count) plus finitely many
/// finite places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetSpec {
    pub infinite_places: u64,
    #[serde(default)]
    pub finite_places: Vec<FinitePlace>,
}

impl SSetSpec {
    pub fn infinite_only(infinite_places: u64) -> Self {
        SSetSpec {
            infinite_places,
            finite_places: Vec::new(),
        }
    }

    /// `s = |S|`.
    pub fn size(&self) -> u64 {
        self.infinite_places + self.finite_places.len() as u64
    }

    /// Checks the places against the field: `K` has between `d/2` and `d`
    /// archimedean places, and the residue degrees of the places of `S`
    /// above a prime `p` sum to at most `d`.
    pub fn validate(&self, field: &NumberFieldSpec) -> Result<()> {
        let d = field.degree;
        if self.infinite_places < d.div_ceil(2) || self.infinite_places > d {
            return Err(Error::InvalidPlaces(format!(
                "a field of degree {d} has between {} and {d} archimedean places, got {}",
                d.div_ceil(2),
                self.infinite_places
            )));
        }
        let mut per_prime: IndexMap<u64, u64> = IndexMap::new();
        for v in &self.finite_places {
            if !is_prime(v.p) {
                return Err(Error::InvalidPlaces(format!("{} is not prime", v.p)));
            }
            if v.f == 0 || v.f as u64 > d {
                return Err(Error::InvalidPlaces(format!(
                    "residue degree {} of a place above {} not in 1..={d}",
                    v.f, v.p
                )));
            }
            *per_prime.entry(v.p).or_default() += v.f as u64;
        }
        if let Some((p, total)) = per_prime.iter().find(|(_, t)| **t > d) {
            return Err(Error::InvalidPlaces(format!(
                "residue degrees above {p} sum to {total} > {d}"
            )));
        }
        Ok(())
    }
}

/// `d_N`, the degree of `X(N) -> X(1)`.
pub fn d_n(level: Level) -> u128 {
    let n = level.get() as u128;
    if n == 2 {
        return 6;
    }
    let num = prime_divisors(n as u64)
        .into_iter()
        .map(|q| q as u128)
        .fold(n * n * n, |num, q| num / (q * q) * (q * q - 1));
    num / 2
}

/// `M = 3N` for `N = 2^k`, `M = 2N` for other prime powers.
pub fn m_of(level: Level) -> Option<u64> {
    let n = level.get() as u64;
    match prime_power_base(n)? {
        2 => Some(3 * n),
        _ => Some(2 * n),
    }
}

/// `B = d_N (N - 6) / (12 N) + 2` as an exact fraction `(num, den)`.
pub fn b_coefficient(level: Level) -> (i128, i128) {
    let n = level.get() as i128;
    let dn = d_n(level) as i128;
    (dn * (n - 6) + 24 * n, 12 * n)
}

/// Largest prime below a finite place of `S`, or 1.
pub fn p_max(sset: &SSetSpec) -> u64 {
    sset.finite_places.iter().map(|v| v.p).max().unwrap_or(1)
}

fn big(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

fn ln_u128(n: u128, ctx: &mut ArithCtx) -> Result<XReal> {
    let x = ctx.from_bigint(&big(n));
    ctx.ln(&x)
}

/// `-(d ln d)`, rounded in the context direction.
fn neg_d_ln_d(d: u64, ctx: &mut ArithCtx) -> Result<XReal> {
    let t = ctx.flipped(|c| -> Result<XReal> {
        let l = ln_u128(d as u128, c)?;
        Ok(c.scale(&big(d), &l))
    })?;
    Ok(t.neg())
}

/// `ln ln n` for `n >= 2`.
fn ln_ln(n: u128, ctx: &mut ArithCtx) -> Result<XReal> {
    let l = ln_u128(n, ctx)?;
    ctx.ln(&l)
}

/// Runs `f` with guard bits and rounds its result to the context precision.
fn guarded(ctx: &mut ArithCtx, f: impl FnOnce(&mut ArithCtx) -> Result<XReal>) -> Result<XReal> {
    let v = ctx.with_extra_precision(GUARD_BITS, f)?;
    Ok(ctx.round(&v))
}

/// `ln Λ = 25 B d_N ln(B d_N)`.
pub fn lambda_ln(level: Level, ctx: &mut ArithCtx) -> Result<XReal> {
    guarded(ctx, |c| {
        let (num, den) = b_coefficient(level);
        let dn = d_n(level) as i128;
        let b_dn = c.ratio(&(big(num) * big(dn)), &big(den))?;
        let l = c.ln(&b_dn)?;
        let t = c.mul(&b_dn, &l);
        Ok(c.scale(&big(25), &t))
    })
}

/// `h(S) = (1/d) sum_{v in S} ln N(v)`.
pub fn h_s(field: &NumberFieldSpec, sset: &SSetSpec, ctx: &mut ArithCtx) -> Result<XReal> {
    guarded(ctx, |c| {
        let mut acc = c.zero();
        for v in &sset.finite_places {
            let l = ln_u128(v.p as u128, c)?;
            acc = c.add(&acc, &c.scale(&big(v.f), &l));
        }
        c.div(&acc, &c.from_u64(field.degree))
    })
}

/// `sum_{v in S finite} ln ln N(v)`; may be negative (norm-2 places).
fn sum_ln_log_norms(sset: &SSetSpec, ctx: &mut ArithCtx) -> Result<XReal> {
    let mut acc = ctx.zero();
    for v in &sset.finite_places {
        let l = ln_u128(v.p as u128, ctx)?;
        let fl = ctx.scale(&big(v.f), &l);
        let t = ctx.ln(&fl)?;
        acc = ctx.add(&acc, &t);
    }
    Ok(acc)
}

/// `ln D* = d_N ln|D| + (h(S) + (1 + ln 1728) Λ) d d_N`.
pub fn ln_dstar(
    level: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ctx: &mut ArithCtx,
) -> Result<XReal> {
    Ok(dstar_parts(level, field, sset, ctx)?.1)
}

/// `(ln Λ, ln D*)`.
fn dstar_parts(
    level: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ctx: &mut ArithCtx,
) -> Result<(XReal, XReal)> {
    // e^(ln Λ) amplifies the absolute error of ln Λ, so ln Λ gets as many
    // extra bits as its integer part has.
    let rough = ctx.with_extra_precision(GUARD_BITS, |c| lambda_ln(level, c))?;
    let int_bits = rough.binary_exponent().to_u64().unwrap_or(0) as usize;
    let lam = ctx.with_extra_precision(GUARD_BITS + int_bits, |c| lambda_ln(level, c))?;
    let dstar = guarded(ctx, |c| {
        let dn = big(d_n(level));
        let lambda = c.exp(&lam)?;
        let ln1728 = ln_u128(1728, c)?;
        let k = c.add(&c.from_u64(1), &ln1728);
        let hs = h_s(field, sset, c)?;
        let inner = c.add(&hs, &c.mul(&k, &lambda));
        let right = c.scale(&(&dn * field.degree), &inner);
        let ln_disc = ln_u128(field.abs_disc as u128, c)?;
        let left = c.scale(&dn, &ln_disc);
        Ok(c.add(&left, &right))
    })?;
    Ok((ctx.round(&lam), dstar))
}

/// `-d ln d + X/2 + e ln X + φ(L) w`, the common shape of `ln Δ0`, `ln Δ`
/// and `ln Δ1`, where `e` is the exponent of `log X` and `w` the log of the
/// place factor before the outer power `φ(L)`.
fn delta_shape(
    d: u64,
    ln_x: &XReal,
    log_exponent: &BigInt,
    phi: u64,
    place_term: &XReal,
    ctx: &mut ArithCtx,
) -> Result<XReal> {
    let half = ctx.div(ln_x, &ctx.from_u64(2))?;
    let ll = ctx.ln(ln_x)?;
    let mut acc = neg_d_ln_d(d, ctx)?;
    acc = ctx.add(&acc, &half);
    acc = ctx.add(&acc, &ctx.scale(log_exponent, &ll));
    acc = ctx.add(&acc, &ctx.scale(&big(phi), place_term));
    Ok(acc)
}

/// `ln Δ0(L)` with `Δ0(L) = d^-d sqrt(X) (ln X)^(d φ(L)) (prod ln N(v))^φ(L)`
/// and `X = L^(dL) |D|^φ(L)`.
pub fn ln_delta0(
    l: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ctx: &mut ArithCtx,
) -> Result<XReal> {
    guarded(ctx, |c| {
        let (lv, d) = (l.get() as u64, field.degree);
        let phi = totient(lv);
        let ln_l = ln_u128(lv as u128, c)?;
        let ln_disc = ln_u128(field.abs_disc as u128, c)?;
        let ln_x = c.add(
            &c.scale(&(big(d) * lv), &ln_l),
            &c.scale(&big(phi), &ln_disc),
        );
        let places = sum_ln_log_norms(sset, c)?;
        delta_shape(d, &ln_x, &(big(d) * phi), phi, &places, c)
    })
}

/// `ln Δ(L)` with `Δ(L) = d^-d sqrt(X) (ln X)^(φ d d_L) (prod ln N(v))^(φ d_L)`
/// and `X = L^(L d d_L) D*^φ(L)`, `D*` taken at level `L`.
pub fn ln_delta(
    l: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ctx: &mut ArithCtx,
) -> Result<XReal> {
    Ok(delta_parts(l, field, sset, ctx)?.2)
}

/// `(ln Λ, ln D*, ln Δ)` at level `L`.
fn delta_parts(
    l: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ctx: &mut ArithCtx,
) -> Result<(XReal, XReal, XReal)> {
    let (lam, dstar) = ctx.with_extra_precision(GUARD_BITS, |c| dstar_parts(l, field, sset, c))?;
    let delta = guarded(ctx, |c| {
        let (lv, d) = (l.get() as u64, field.degree);
        let phi = totient(lv);
        let dl = big(d_n(l));
        let ln_l = ln_u128(lv as u128, c)?;
        let ln_x = c.add(
            &c.scale(&(&dl * d * lv), &ln_l),
            &c.scale(&big(phi), &dstar),
        );
        let places = sum_ln_log_norms(sset, c)?;
        let places = c.scale(&dl, &places);
        delta_shape(d, &ln_x, &(&dl * d * phi), phi, &places, c)
    })?;
    Ok((ctx.round(&lam), ctx.round(&dstar), delta))
}

/// Data of the field `K_0 = K(P~)` entering `Δ1`.
#[derive(Clone, Debug)]
pub struct LiftedFieldData {
    /// `d_0 = [K_0 : Q]`.
    pub degree: u64,
    /// `ln |D_0|`.
    pub ln_abs_disc: XReal,
    /// `ln prod_{v in S_0 finite} ln N(v)`.
    pub ln_place_product: XReal,
}

/// `ln Δ1` with `Δ1 = d0^-d0 sqrt(X) (ln X)^(d0 φ(L)) (prod ln N(v))^φ(L)`
/// and `X = L^(d0 L) |D_0|^φ(L)`.
pub fn delta1_ln(l: Level, lifted: &LiftedFieldData, ctx: &mut ArithCtx) -> Result<XReal> {
    if lifted.degree == 0 || lifted.ln_abs_disc.is_negative() {
        return Err(Error::InvalidField(
            "lifted field needs positive degree and |D_0| >= 1".into(),
        ));
    }
    guarded(ctx, |c| {
        let (lv, d0) = (l.get() as u64, lifted.degree);
        let phi = totient(lv);
        let ln_l = ln_u128(lv as u128, c)?;
        let ln_x = c.add(
            &c.scale(&(big(d0) * lv), &ln_l),
            &c.scale(&big(phi), &lifted.ln_abs_disc),
        );
        delta_shape(
            d0,
            &ln_x,
            &(big(d0) * phi),
            phi,
            &lifted.ln_place_product,
            c,
        )
    })
}

/// Which effective statement a bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// At least three cusps on `X_Γ` itself; both level cases.
    Main,
    /// Via `Γ~`, level `N` not a prime power.
    Main1Part,
    /// Via `Γ~`, `N` a prime power and every quantity taken at `M`.
    Main1PrimePowerPart,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Main => "main",
            Theorem::Main1Part => "main1-part1",
            Theorem::Main1PrimePowerPart => "main1-part2",
        }
    }
}

/// A height bound `ln h(P) <= ln_bound`, with `ln_bound = k ln C + ln_rest`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub level: Level,
    /// `N`, or `M` when `N` is a prime power.
    pub level_used: Level,
    pub prime_power_level: bool,
    pub rounding: Rounding,
    pub precision_bits: usize,
    /// The exact coefficient `k` of `ln C`.
    pub ln_c_coefficient: BigInt,
    pub ln_c: XReal,
    pub ln_rest: XReal,
    pub ln_bound: XReal,
    pub log10_bound: XReal,
    /// Named intermediate quantities, all natural logarithms except `h_s`.
    pub components: IndexMap<&'static str, XReal>,
}

fn level_used(level: Level) -> Result<(Level, bool)> {
    match m_of(level) {
        Some(m) => Ok((Level::new(m)?, true)),
        None => Ok((level, false)),
    }
}

/// `ln x / ln 10`, rounded in the context direction.
pub fn log10(x: &XReal, ctx: &mut ArithCtx) -> Result<XReal> {
    guarded(ctx, |c| {
        // Dividing by a smaller ln 10 moves a positive quotient up.
        let toward_up = !x.is_negative();
        let r = match (c.rounding(), toward_up) {
            (Rounding::Up, true) | (Rounding::Down, false) => Rounding::Down,
            _ => Rounding::Up,
        };
        let ln10 = c.with_rounding(r, |c| c.ln10());
        c.div(x, &ln10)
    })
}

struct Assembly {
    coefficient: BigInt,
    rest: XReal,
    components: IndexMap<&'static str, XReal>,
}

#[allow(clippy::too_many_arguments)]
fn finish(
    theorem: Theorem,
    level: Level,
    level_used: Level,
    prime_power_level: bool,
    ln_c: &XReal,
    a: Assembly,
    ctx: &mut ArithCtx,
) -> Result<BoundReport> {
    let ln_bound = guarded(ctx, |c| {
        let t = c.scale(&a.coefficient, ln_c);
        Ok(c.add(&t, &a.rest))
    })?;
    let log10_bound = log10(&ln_bound, ctx)?;
    Ok(BoundReport {
        theorem,
        level,
        level_used,
        prime_power_level,
        rounding: ctx.rounding(),
        precision_bits: ctx.prec(),
        ln_c_coefficient: a.coefficient,
        ln_c: ln_c.clone(),
        ln_rest: a.rest,
        ln_bound,
        log10_bound,
        components: a.components,
    })
}

/// Bound for `X_Γ` with at least three cusps:
/// `(C d s L^2)^(2sL) (ln dL)^(3sL) p^(dL) Δ0(L)`, with `L = N`, or `L = M`
/// when `N` is a prime power.
pub fn bound_main(
    level: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ln_c: &XReal,
    ctx: &mut ArithCtx,
) -> Result<BoundReport> {
    field.validate()?;
    sset.validate(field)?;
    let (l, prime_power) = level_used(level)?;
    let (lv, d, s) = (l.get() as u64, field.degree, sset.size());
    let ln_delta0 = ctx.with_extra_precision(GUARD_BITS, |c| ln_delta0(l, field, sset, c))?;
    let rest = guarded(ctx, |c| {
        let sl = big(s) * lv;
        let (d, s, lv) = (d as u128, s as u128, lv as u128);
        let ln_dsl2 = ln_u128(d * s * lv * lv, c)?;
        let lnln_dl = ln_ln(d * lv, c)?;
        let ln_p = ln_u128(p_max(sset) as u128, c)?;
        let t1 = c.scale(&(&sl * 2), &ln_dsl2);
        let t2 = c.scale(&(&sl * 3), &lnln_dl);
        let t3 = c.scale(&big(d * lv), &ln_p);
        let acc = c.add(&t1, &t2);
        let acc = c.add(&acc, &t3);
        Ok(c.add(&acc, &ln_delta0))
    })?;
    let mut components = IndexMap::new();
    components.insert("ln_delta0", ctx.round(&ln_delta0));
    let a = Assembly {
        coefficient: big(2 * s) * lv,
        rest,
        components,
    };
    finish(Theorem::Main, level, l, prime_power, ln_c, a, ctx)
}

/// Bound for `X_Γ` through `X_Γ~`:
/// `(C d s d_L^2 L^2)^(2sLd_L) (ln dLd_L)^(3sLd_L) p^(dLd_L) Δ(L)`, with
/// `L = N`, or `L = M` when `N` is a prime power.
pub fn bound_main1(
    level: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ln_c: &XReal,
    ctx: &mut ArithCtx,
) -> Result<BoundReport> {
    field.validate()?;
    sset.validate(field)?;
    let (l, prime_power) = level_used(level)?;
    let (lv, d, s) = (l.get() as u64, field.degree, sset.size());
    let dl = d_n(l);
    let (lam, dstar, delta) =
        ctx.with_extra_precision(GUARD_BITS, |c| delta_parts(l, field, sset, c))?;
    let rest = guarded(ctx, |c| {
        let sld = big(s) * lv * dl;
        let inner = big(d) * s * dl * dl * lv * lv;
        let ln_inner = c.ln(&c.from_bigint(&inner))?;
        let t1 = c.scale(&(&sld * 2), &ln_inner);
        let lnln_dld = ln_ln(d as u128 * lv as u128 * dl, c)?;
        let ln_p = ln_u128(p_max(sset) as u128, c)?;
        let t2 = c.scale(&(&sld * 3), &lnln_dld);
        let t3 = c.scale(&(big(d) * lv * dl), &ln_p);
        let acc = c.add(&t1, &t2);
        let acc = c.add(&acc, &t3);
        Ok(c.add(&acc, &delta))
    })?;
    let mut components = IndexMap::new();
    components.insert("ln_lambda", ctx.round(&lam));
    components.insert("ln_dstar", ctx.round(&dstar));
    components.insert("ln_delta", ctx.round(&delta));
    components.insert("h_s", h_s(field, sset, ctx)?);
    let a = Assembly {
        coefficient: big(2 * s) * lv * dl,
        rest,
        components,
    };
    let theorem = if prime_power {
        Theorem::Main1PrimePowerPart
    } else {
        Theorem::Main1Part
    };
    finish(theorem, level, l, prime_power, ln_c, a, ctx)
}

/// The bound selected by a verdict, or [`Error::Inapplicable`].
pub fn bound_for_verdict(
    verdict: Verdict,
    level: Level,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ln_c: &XReal,
    ctx: &mut ArithCtx,
) -> Option<Result<BoundReport>> {
    match verdict {
        Verdict::MainDirect => Some(bound_main(level, field, sset, ln_c, ctx)),
        Verdict::MainViaTilde => Some(bound_main1(level, field, sset, ln_c, ctx)),
        Verdict::Inapplicable => None,
    }
}

/// Computes the applicability verdict of `h` and the matching bound.
pub fn bound_auto(
    h: &SubgroupImage,
    field: &NumberFieldSpec,
    sset: &SSetSpec,
    ln_c: &XReal,
    cap: u64,
    ctx: &mut ArithCtx,
) -> Result<BoundReport> {
    let app = applicability(h, cap)?;
    bound_for_verdict(app.verdict, h.level(), field, sset, ln_c, ctx).unwrap_or(Err(
        Error::Inapplicable {
            nu_inf: app.invariants.nu_inf,
            tilde_nu_inf: app.tilde_invariants.nu_inf,
        },
    ))
}
