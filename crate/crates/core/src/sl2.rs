//! Exact arithmetic in SL2(Z/N): matrices, enumeration, subgroup closure
//! and right-coset representatives.

use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inverse, prime_divisors};
use crate::error::{Error, Result};

/// Default cap on `|SL2(Z/N)|` for operations that walk the whole group.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// The level `N >= 2` of a congruence subgroup. Levels are capped at
/// `2^31 - 1` so that residue products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Level(u32);

impl Level {
    pub fn new(n: u64) -> Result<Self> {
        if !(2..=i32::MAX as u64).contains(&n) {
            return Err(Error::InvalidLevel(n));
        }
        Ok(Level(n as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn modulus(self) -> u64 {
        self.0 as u64
    }
}

impl TryFrom<u64> for Level {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        Level::new(n)
    }
}

impl From<Level> for u64 {
    fn from(level: Level) -> u64 {
        level.0 as u64
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of SL2(Z/N) with entries stored as least nonnegative residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatZN {
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    level: Level,
}

impl MatZN {
    /// Reduces the integer matrix `[[a, b], [c, d]]` modulo the level and
    /// checks that its determinant is 1.
    pub fn new(a: i64, b: i64, c: i64, d: i64, level: Level) -> Result<Self> {
        let n = level.modulus() as i128;
        let red = |x: i64| (x as i128).rem_euclid(n) as u32;
        let det = ((a as i128) * (d as i128) - (b as i128) * (c as i128)).rem_euclid(n);
        if det != 1 % n {
            return Err(Error::NotInSl2 {
                a,
                b,
                c,
                d,
                det: det as i64,
                level: level.get(),
            });
        }
        Ok(MatZN {
            a: red(a),
            b: red(b),
            c: red(c),
            d: red(d),
            level,
        })
    }

    /// Builds a matrix from residues already known to have determinant 1.
    fn from_residues(a: u64, b: u64, c: u64, d: u64, level: Level) -> Self {
        let n = level.modulus();
        debug_assert_eq!(
            (a as i128 * d as i128 - b as i128 * c as i128).rem_euclid(n as i128),
            1
        );
        MatZN {
            a: (a % n) as u32,
            b: (b % n) as u32,
            c: (c % n) as u32,
            d: (d % n) as u32,
            level,
        }
    }

    pub fn identity(level: Level) -> Self {
        Self::from_residues(1, 0, 0, 1, level)
    }

    pub fn minus_identity(level: Level) -> Self {
        let n = level.modulus();
        Self::from_residues(n - 1, 0, 0, n - 1, level)
    }

    /// `[[0, -1], [1, 0]]`, fixing `i`; order 4 (order 2 in PSL2).
    pub fn s(level: Level) -> Self {
        Self::new(0, -1, 1, 0, level).expect("det 1")
    }

    /// `[[0, -1], [1, -1]]`, fixing a primitive cube root of unity; order 3.
    pub fn rho(level: Level) -> Self {
        Self::new(0, -1, 1, -1, level).expect("det 1")
    }

    /// `[[1, 1], [0, 1]]`.
    pub fn translation(level: Level) -> Self {
        Self::new(1, 1, 0, 1, level).expect("det 1")
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Entries `[a, b, c, d]` of `[[a, b], [c, d]]`.
    pub fn entries(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.level)
    }

    pub(crate) fn mul_unchecked(&self, other: &MatZN) -> MatZN {
        let n = self.level.modulus();
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        let (e, f, g, h) = (
            other.a as u64,
            other.b as u64,
            other.c as u64,
            other.d as u64,
        );
        MatZN {
            a: ((a * e + b * g) % n) as u32,
            b: ((a * f + b * h) % n) as u32,
            c: ((c * e + d * g) % n) as u32,
            d: ((c * f + d * h) % n) as u32,
            level: self.level,
        }
    }

    pub fn mul(&self, other: &MatZN) -> Result<MatZN> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level.get(),
                right: other.level.get(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub fn inverse(&self) -> MatZN {
        let n = self.level.modulus() as u32;
        let neg = |x: u32| if x == 0 { 0 } else { n - x };
        MatZN {
            a: self.d,
            b: neg(self.b),
            c: neg(self.c),
            d: self.a,
            level: self.level,
        }
    }

    pub fn neg(&self) -> MatZN {
        let n = self.level.modulus() as u32;
        let neg = |x: u32| if x == 0 { 0 } else { n - x };
        MatZN {
            a: neg(self.a),
            b: neg(self.b),
            c: neg(self.c),
            d: neg(self.d),
            level: self.level,
        }
    }

    pub fn pow(&self, k: u64) -> MatZN {
        let mut result = MatZN::identity(self.level);
        let mut base = *self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        result
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &MatZN) -> MatZN {
        g.mul_unchecked(self).mul_unchecked(&g.inverse())
    }

    /// Applies the matrix to the column vector `(x; y)`.
    pub(crate) fn apply(&self, x: u32, y: u32) -> (u32, u32) {
        let n = self.level.modulus();
        let (x, y) = (x as u64, y as u64);
        (
            ((self.a as u64 * x + self.b as u64 * y) % n) as u32,
            ((self.c as u64 * x + self.d as u64 * y) % n) as u32,
        )
    }
}

impl fmt::Display for MatZN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]] mod {}",
            self.a, self.b, self.c, self.d, self.level
        )
    }
}

/// Product of two matrices at the same level.
pub fn mat_mul(x: &MatZN, y: &MatZN) -> Result<MatZN> {
    x.mul(y)
}

/// `|SL2(Z/N)| = N^3 * prod_{q | N} (1 - 1/q^2)`, exact.
pub fn group_order(level: Level) -> u128 {
    let n = level.modulus() as u128;
    prime_divisors(level.modulus())
        .into_iter()
        .fold(n * n * n, |acc, q| {
            let q = q as u128;
            acc / (q * q) * (q * q - 1)
        })
}

/// Fails with [`Error::CapExceeded`] when `|SL2(Z/N)|` exceeds `cap`.
pub fn check_cap(level: Level, cap: u64) -> Result<()> {
    let order = group_order(level);
    if order > cap as u128 {
        return Err(Error::CapExceeded {
            level: level.get(),
            order,
            cap,
        });
    }
    Ok(())
}

/// All elements of SL2(Z/N), ordered by first column and then by the
/// translate `k` in the second column `(b0, d0) + k (a, c)`.
pub fn enumerate_group(level: Level, cap: u64) -> Result<Vec<MatZN>> {
    check_cap(level, cap)?;
    let n = level.modulus();
    let mut out = Vec::with_capacity(group_order(level) as usize);
    for a in 0..n {
        for c in 0..n {
            if gcd(gcd(a, c), n) != 1 {
                continue;
            }
            let (b0, d0) = second_column(a, c, n);
            for k in 0..n {
                out.push(MatZN::from_residues(
                    a,
                    (b0 + k * a) % n,
                    c,
                    (d0 + k * c) % n,
                    level,
                ));
            }
        }
    }
    debug_assert_eq!(out.len() as u128, group_order(level));
    Ok(out)
}

/// Some `(b, d)` with `a d - b c = 1 (mod n)` for a primitive column `(a; c)`.
fn second_column(a: u64, c: u64, n: u64) -> (u64, u64) {
    if n == 1 {
        return (0, 0);
    }
    // a + k c is a unit for some k whenever gcd(a, c, n) = 1; then
    // [[a, -k d'], [c, d']] with d' = (a + k c)^-1 has determinant 1.
    for k in 0..n {
        if let Some(dp) = mod_inverse((a + k * c) % n, n) {
            let b = (n - (k * dp) % n) % n;
            return (b, dp);
        }
    }
    unreachable!("column ({a}; {c}) is not primitive mod {n}")
}

/// The image of a congruence subgroup in SL2(Z/N).
#[derive(Clone, Debug)]
pub struct SubgroupImage {
    level: Level,
    elements: IndexSet<MatZN>,
    generators: Vec<MatZN>,
    contains_minus_identity: bool,
}

impl PartialEq for SubgroupImage {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && self.elements.len() == other.elements.len()
            && self.elements.iter().all(|m| other.elements.contains(m))
    }
}

impl Eq for SubgroupImage {}

impl SubgroupImage {
    pub fn level(&self) -> Level {
        self.level
    }

    /// Elements in breadth-first discovery order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = &MatZN> + '_ {
        self.elements.iter()
    }

    pub fn generators(&self) -> &[MatZN] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &MatZN) -> bool {
        self.elements.contains(m)
    }

    /// Membership in `<H, -I>`.
    pub fn contains_up_to_sign(&self, m: &MatZN) -> bool {
        self.elements.contains(m) || self.elements.contains(&m.neg())
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains_minus_identity
    }

    /// `|<H, -I>|`.
    pub fn signed_order(&self) -> usize {
        if self.contains_minus_identity {
            self.order()
        } else {
            2 * self.order()
        }
    }

    /// Index of `<H, -I>` in SL2(Z/N), i.e. the index of `±Γ` in PSL2(Z).
    pub fn index(&self) -> u128 {
        group_order(self.level) / self.signed_order() as u128
    }

    /// `<H, -I>` as a subgroup in its own right.
    pub fn with_minus_identity(&self) -> SubgroupImage {
        if self.contains_minus_identity {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(MatZN::minus_identity(self.level));
        closure(self.level, &gens).expect("generators share the level")
    }

    pub fn is_subgroup_of(&self, other: &SubgroupImage) -> bool {
        self.level == other.level && self.elements.iter().all(|m| other.contains(m))
    }
}

/// Smallest subgroup containing `gens`, built by breadth-first right
/// multiplication from the identity.
pub fn closure(level: Level, gens: &[MatZN]) -> Result<SubgroupImage> {
    if let Some(g) = gens.iter().find(|g| g.level != level) {
        return Err(Error::LevelMismatch {
            left: level.get(),
            right: g.level.get(),
        });
    }
    let mut elements = IndexSet::new();
    elements.insert(MatZN::identity(level));
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next];
        next += 1;
        for g in gens {
            elements.insert(x.mul_unchecked(g));
        }
    }
    let contains_minus_identity = elements.contains(&MatZN::minus_identity(level));
    Ok(SubgroupImage {
        level,
        elements,
        generators: gens.to_vec(),
        contains_minus_identity,
    })
}

/// Least `k >= 1` with `m^k = I`.
pub fn element_order(m: &MatZN) -> u64 {
    let mut k = 1;
    let mut x = *m;
    while !x.is_identity() {
        x = x.mul_unchecked(m);
        k += 1;
    }
    k
}

/// One representative for each right coset `<H, -I> g` of SL2(Z/N),
/// starting from the identity and discovered breadth-first through `s`
/// and the translation.
pub fn coset_reps(h: &SubgroupImage, cap: u64) -> Result<Vec<MatZN>> {
    check_cap(h.level, cap)?;
    let level = h.level;
    let steps = [MatZN::s(level), MatZN::translation(level)];
    let key = |g: &MatZN| -> MatZN {
        h.elements
            .iter()
            .flat_map(|x| {
                let y = x.mul_unchecked(g);
                [y, y.neg()]
            })
            .min()
            .expect("subgroup is nonempty")
    };

    let mut seen: IndexSet<MatZN> = IndexSet::new();
    let mut reps = vec![MatZN::identity(level)];
    seen.insert(key(&reps[0]));
    let mut next = 0;
    while next < reps.len() {
        let g = reps[next];
        next += 1;
        for step in &steps {
            let candidate = g.mul_unchecked(step);
            if seen.insert(key(&candidate)) {
                reps.push(candidate);
            }
        }
    }
    debug_assert_eq!(reps.len() as u128, h.index());
    Ok(reps)
}
