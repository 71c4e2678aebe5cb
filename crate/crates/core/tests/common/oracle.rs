//! Reference evaluation of the height-bound quantities on dashu-float at
//! 384 bits, round-half-even. Shares no code with the library: its own
//! totient, d_N, M, and formula assembly.

#![allow(dead_code)]

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;

pub type F = FBig<HalfEven, 2>;

pub const PREC: usize = 384;

pub fn num(n: impl Into<IBig>) -> F {
    F::from(n.into()).with_precision(PREC).value()
}

fn ln(x: &F) -> F {
    x.ln()
}

fn primes_dividing(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|q| n.is_multiple_of(*q) && (2..*q).all(|r| q % r != 0))
        .collect()
}

pub fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `d_N`: `N^3/2 prod (1 - q^-2)` for `N > 2`, and 6 for `N = 2`.
pub fn d_n(n: u64) -> IBig {
    if n == 2 {
        return IBig::from(6);
    }
    let mut num = IBig::from(n).pow(3);
    let mut den = IBig::from(2);
    for q in primes_dividing(n) {
        num *= IBig::from(q * q - 1);
        den *= IBig::from(q * q);
    }
    assert_eq!(&num % &den, IBig::ZERO);
    num / den
}

/// `M` for prime powers: `3N` for powers of 2, `2N` otherwise.
pub fn m_of(n: u64) -> Option<u64> {
    let ps = primes_dividing(n);
    match ps.as_slice() {
        [2] => Some(3 * n),
        [_] => Some(2 * n),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct Arith {
    pub d: u64,
    pub abs_disc: u64,
    pub infinite: u64,
    /// `(p, f)` with norm `p^f`.
    pub finite: Vec<(u64, u32)>,
}

impl Arith {
    pub fn s(&self) -> u64 {
        self.infinite + self.finite.len() as u64
    }

    pub fn p(&self) -> u64 {
        self.finite.iter().map(|x| x.0).max().unwrap_or(1)
    }

    /// `sum_{v finite} ln(ln N(v))`, i.e. ln of the product of log-norms.
    fn ln_log_norm_product(&self) -> F {
        self.finite.iter().fold(num(0), |acc, &(p, f)| {
            let norm = num(IBig::from(p).pow(f as usize));
            acc + ln(&ln(&norm))
        })
    }

    /// `h(S) = sum_{v in S} ln N(v) / d`.
    fn h_s(&self) -> F {
        let total = self.finite.iter().fold(num(0), |acc, &(p, f)| {
            acc + ln(&num(IBig::from(p).pow(f as usize)))
        });
        total / num(self.d)
    }
}

/// `ln Λ` with `Λ = (B d_N)^{25 B d_N}`, `B = d_N (N - 6)/(12 N) + 2`.
pub fn ln_lambda(n: u64) -> F {
    let dn = num(d_n(n));
    let b = &dn * num(n as i64 - 6) / num(12 * n) + num(2);
    let base = &b * &dn;
    let expo = num(25) * &b * &dn;
    expo * ln(&base)
}

/// `ln D* = d_N ln|D| + (h(S) + (1 + ln 1728) Λ) d d_N`.
pub fn ln_dstar(n: u64, a: &Arith) -> F {
    let dn = num(d_n(n));
    let lambda = ln_lambda(n).exp();
    let c = num(1) + ln(&num(1728));
    &dn * ln(&num(a.abs_disc)) + (a.h_s() + c * lambda) * num(a.d) * &dn
}

/// `ln Δ0(L)`, materializing `X = L^{dL} |D|^{φ(L)}` exactly.
pub fn ln_delta0(l: u64, a: &Arith) -> F {
    let ph = phi(l);
    let x = IBig::from(l).pow((a.d * l) as usize) * IBig::from(a.abs_disc).pow(ph as usize);
    let ln_x = ln(&num(x));
    let d = num(a.d);
    -(&d * ln(&d)) + &ln_x / num(2) + num(a.d * ph) * ln(&ln_x) + num(ph) * a.ln_log_norm_product()
}

/// `ln Δ(L)` with `D*` taken at level `L`.
pub fn ln_delta(l: u64, a: &Arith) -> F {
    let ph = phi(l);
    let dl = num(d_n(l));
    let d = num(a.d);
    let ln_x = num(l) * &d * &dl * ln(&num(l)) + num(ph) * ln_dstar(l, a);
    -(&d * ln(&d))
        + &ln_x / num(2)
        + num(ph) * &d * &dl * ln(&ln_x)
        + num(ph) * &dl * a.ln_log_norm_product()
}

fn level_used(n: u64) -> u64 {
    m_of(n).unwrap_or(n)
}

/// `ln` of `(C d s L^2)^{2sL} (ln dL)^{3sL} p^{dL} Δ0(L)`.
pub fn ln_bound_main(n: u64, a: &Arith, ln_c: &F) -> F {
    let l = level_used(n);
    let s = a.s();
    let (lf, sf, d) = (num(l), num(s), num(a.d));
    let cdsl2 = ln_c + ln(&(&d * &sf * &lf * &lf));
    num(2 * s * l) * cdsl2
        + num(3 * s * l) * ln(&ln(&(&d * &lf)))
        + num(a.d * l) * ln(&num(a.p()))
        + ln_delta0(l, a)
}

/// `ln` of `(C d s d_L^2 L^2)^{2sLd_L} (ln dLd_L)^{3sLd_L} p^{dLd_L} Δ(L)`.
pub fn ln_bound_main1(n: u64, a: &Arith, ln_c: &F) -> F {
    let l = level_used(n);
    let s = a.s();
    let dl = num(d_n(l));
    let (lf, sf, d) = (num(l), num(s), num(a.d));
    let sld = num(s * l) * &dl;
    let inner = ln_c + ln(&(&d * &sf * &dl * &dl * &lf * &lf));
    num(2) * &sld * inner
        + num(3) * &sld * ln(&ln(&(&d * &lf * &dl)))
        + &d * &lf * &dl * ln(&num(a.p()))
        + ln_delta(l, a)
}

/// `|x - y| / |y|` as an `f64`.
pub fn rel_diff(x: &F, y: &F) -> f64 {
    let diff = abs(x - y);
    if y == &num(0) {
        return if diff == num(0) { 0.0 } else { f64::INFINITY };
    }
    (diff / abs(y.clone())).to_f64().value()
}

fn abs(x: F) -> F {
    if x < num(0) {
        -x
    } else {
        x
    }
}
