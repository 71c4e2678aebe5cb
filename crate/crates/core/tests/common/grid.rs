//! Deterministic sample of arithmetic data: N <= 30, d <= 5, |D| <= 10^6,
//! |S| <= 5.

use jbound_core::bound::{FinitePlace, NumberFieldSpec, SSetSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::Arith;

const PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Values of ln C that are exact in binary.
pub const LN_C: [f64; 4] = [0.0, 1.5, -2.0, 10.25];

#[derive(Clone, Debug)]
pub struct Point {
    pub n: u64,
    pub field: NumberFieldSpec,
    pub sset: SSetSpec,
    pub ln_c: f64,
}

impl Point {
    pub fn arith(&self) -> Arith {
        Arith {
            d: self.field.degree,
            abs_disc: self.field.abs_disc,
            infinite: self.sset.infinite_places,
            finite: self.sset.finite_places.iter().map(|v| (v.p, v.f)).collect(),
        }
    }
}

pub fn random_sset(rng: &mut ChaCha8Rng, d: u64, max_size: u64) -> SSetSpec {
    let infinite = rng.gen_range(d.div_ceil(2)..=d);
    let room = max_size.saturating_sub(infinite);
    let count = rng.gen_range(0..=room);
    let mut primes = PRIMES.to_vec();
    primes.shuffle(rng);
    let finite = primes
        .into_iter()
        .take(count as usize)
        .map(|p| FinitePlace {
            p,
            f: rng.gen_range(1..=d as u32),
        })
        .collect();
    SSetSpec {
        infinite_places: infinite,
        finite_places: finite,
    }
}

/// `count` points, always including the degenerate corners.
pub fn sample(count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        Point {
            n: 2,
            field: NumberFieldSpec::rationals(),
            sset: SSetSpec::infinite_only(1),
            ln_c: 0.0,
        },
        Point {
            n: 30,
            field: NumberFieldSpec::new(5, 1_000_000).unwrap(),
            sset: random_sset(&mut rng, 5, 5),
            ln_c: 10.25,
        },
    ];
    while out.len() < count {
        let d = rng.gen_range(1..=5u64);
        let abs_disc = if rng.gen_bool(0.2) {
            1
        } else {
            rng.gen_range(1..=1_000_000u64)
        };
        out.push(Point {
            n: rng.gen_range(2..=30),
            field: NumberFieldSpec::new(d, abs_disc).unwrap(),
            sset: random_sset(&mut rng, d, 5),
            ln_c: *LN_C.choose(&mut rng).unwrap(),
        });
    }
    out
}
