//! Invariants of the modular curve `X_Γ` attached to a congruence subgroup
//! given by its image `H` in SL2(Z/N).
//!
//! Every count here is taken for `<H, -I>`, since `X_Γ` only depends on
//! `±Γ`. Cusps are the `<H, -I>`-orbits on primitive vectors of `(Z/N)^2`;
//! elliptic points are the right cosets `<H, -I> g` fixed by right
//! multiplication with `s` (over `j = 1728`) or `ρ` (over `j = 0`).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inverse, prime_divisors};
use crate::error::{Error, Result};
use crate::sl2::{check_cap, closure, coset_reps, Level, MatZN, SubgroupImage};

/// Families of congruence subgroups with a closed-form image mod N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupKind {
    /// `c ≡ 0 (mod N)`.
    Gamma0,
    /// `c ≡ 0`, `a ≡ d ≡ 1 (mod N)`.
    Gamma1,
    /// All of SL2(Z).
    GammaFull,
    /// `Γ(N)`, whose image is trivial.
    PrincipalGammaN,
}

impl SubgroupKind {
    pub fn name(self) -> &'static str {
        match self {
            SubgroupKind::Gamma0 => "gamma0",
            SubgroupKind::Gamma1 => "gamma1",
            SubgroupKind::GammaFull => "full",
            SubgroupKind::PrincipalGammaN => "gamma",
        }
    }
}

/// Index, cusp count, elliptic point counts and genus of `X_Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    /// Index of `±Γ` in PSL2(Z).
    pub mu: u64,
    pub nu_inf: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub genus: u64,
}

/// Elliptic cosets of `<H, -I>` and the stabilizer generators they yield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticData {
    /// Coset representatives `g` with `g s g^-1 ∈ ±H`.
    pub order2_cosets: Vec<MatZN>,
    /// Coset representatives `g` with `g ρ g^-1 ∈ ±H`.
    pub order3_cosets: Vec<MatZN>,
    /// One generator of each stabilizer `Γ_z` (as an element of `H`), in
    /// the order the cosets were found: first the `s` cosets, then `ρ`.
    pub stabilizer_generators: Vec<MatZN>,
}

impl EllipticData {
    pub fn nu2(&self) -> u64 {
        self.order2_cosets.len() as u64
    }

    pub fn nu3(&self) -> u64 {
        self.order3_cosets.len() as u64
    }
}

/// Which effective theorem covers `X_Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// `X_Γ` itself has at least three cusps.
    MainDirect,
    /// `X_Γ` has fewer than three cusps but `X_Γ~` has at least three.
    MainViaTilde,
    Inapplicable,
}

#[derive(Clone, Debug)]
pub struct Applicability {
    pub verdict: Verdict,
    pub invariants: CurveInvariants,
    pub tilde_image: SubgroupImage,
    pub tilde_invariants: CurveInvariants,
    /// `|G~| < N^2/4 * prod_{q | N} (1 - q^-2)`.
    pub sufficient_criterion_holds: bool,
}

/// Image of a standard congruence subgroup at the given level.
pub fn standard_subgroup(kind: SubgroupKind, level: Level) -> SubgroupImage {
    let t = MatZN::translation(level);
    let gens = match kind {
        SubgroupKind::Gamma0 => {
            let n = level.get() as u64;
            let mut gens = vec![t];
            for u in unit_group_generators(n) {
                let inv = mod_inverse(u, n).expect("unit");
                gens.push(MatZN::new(u as i64, 0, 0, inv as i64, level).expect("det 1"));
            }
            gens
        }
        SubgroupKind::Gamma1 => vec![t],
        SubgroupKind::GammaFull => vec![MatZN::s(level), t],
        SubgroupKind::PrincipalGammaN => vec![],
    };
    closure(level, &gens).expect("generators share the level")
}

/// A small generating set of `(Z/n)^*`, chosen greedily in increasing order.
fn unit_group_generators(n: u64) -> Vec<u64> {
    let mut generated: BTreeSet<u64> = BTreeSet::from([1 % n]);
    let mut gens = Vec::new();
    for u in 2..n {
        if gcd(u, n) != 1 || generated.contains(&u) {
            continue;
        }
        gens.push(u);
        let mut frontier: Vec<u64> = generated.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x * g % n;
                if generated.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Number of cusps of `X_Γ`: orbits of `<H, -I>` on the column vectors
/// `(a; c)` with `gcd(a, c, N) = 1`.
pub fn cusp_count(h: &SubgroupImage, cap: u64) -> Result<u64> {
    check_cap(h.level(), cap)?;
    let level = h.level();
    let n = level.get();
    let nu = n as usize;
    let mut gens: Vec<MatZN> = h.generators().to_vec();
    gens.push(MatZN::minus_identity(level));

    let mut visited = vec![false; nu * nu];
    let mut stack = Vec::new();
    let mut orbits = 0;
    for a in 0..n {
        for c in 0..n {
            let idx = a as usize * nu + c as usize;
            if visited[idx] || gcd(gcd(a as u64, c as u64), n as u64) != 1 {
                continue;
            }
            orbits += 1;
            visited[idx] = true;
            stack.push((a, c));
            while let Some((x, y)) = stack.pop() {
                for g in &gens {
                    let (u, v) = g.apply(x, y);
                    let j = u as usize * nu + v as usize;
                    if !visited[j] {
                        visited[j] = true;
                        stack.push((u, v));
                    }
                }
            }
        }
    }
    Ok(orbits)
}

/// Elliptic cosets of `<H, -I>` over `j = 1728` and `j = 0`.
pub fn elliptic_counts(h: &SubgroupImage, cap: u64) -> Result<EllipticData> {
    let level = h.level();
    let reps = coset_reps(h, cap)?;
    let s = MatZN::s(level);
    let rho = MatZN::rho(level);

    let mut data = EllipticData {
        order2_cosets: Vec::new(),
        order3_cosets: Vec::new(),
        stabilizer_generators: Vec::new(),
    };
    let mut order3_gens = Vec::new();
    for g in &reps {
        let sigma = s.conjugate_by(g);
        if h.contains_up_to_sign(&sigma) {
            data.order2_cosets.push(*g);
            data.stabilizer_generators
                .push(stabilizer_generator(h, sigma)?);
        }
        let tau = rho.conjugate_by(g);
        if h.contains_up_to_sign(&tau) {
            data.order3_cosets.push(*g);
            order3_gens.push(stabilizer_generator(h, tau)?);
        }
    }
    data.stabilizer_generators.extend(order3_gens);
    Ok(data)
}

/// Generator of `H ∩ <x, -I>` for an elliptic `x` with `x ∈ ±H`.
///
/// If `±x ∈ H` then `x ∈ H` (for `s`-conjugates `x^2 = -I`, for
/// `ρ`-conjugates `x = (-x)^4`), and the stabilizer is `<x>` or `<-x>`
/// according to whether `-I ∈ H`.
fn stabilizer_generator(h: &SubgroupImage, x: MatZN) -> Result<MatZN> {
    if !h.contains(&x) {
        return Err(Error::InvariantViolation(format!(
            "elliptic element {x} lies in -H but not in H"
        )));
    }
    let minus = x.neg();
    if h.contains_minus_identity() && x.pow(2) != MatZN::minus_identity(x.level()) {
        Ok(minus)
    } else {
        Ok(x)
    }
}

/// Genus of `X_Γ` from `12 g = 12 + μ - 3 ν2 - 4 ν3 - 6 ν∞`.
pub fn genus(h: &SubgroupImage, cap: u64) -> Result<u64> {
    Ok(curve_invariants(h, cap)?.genus)
}

/// All invariants of `X_Γ` in one pass.
pub fn curve_invariants(h: &SubgroupImage, cap: u64) -> Result<CurveInvariants> {
    let nu_inf = cusp_count(h, cap)?;
    let elliptic = elliptic_counts(h, cap)?;
    let mu = h.index() as u64;
    let (nu2, nu3) = (elliptic.nu2(), elliptic.nu3());
    let twelve_g = 12 + mu as i128 - 3 * nu2 as i128 - 4 * nu3 as i128 - 6 * nu_inf as i128;
    if twelve_g < 0 || twelve_g % 12 != 0 {
        return Err(Error::InvariantViolation(format!(
            "non-integral genus: 12g = {twelve_g} (mu = {mu}, nu2 = {nu2}, nu3 = {nu3}, nu_inf = {nu_inf})"
        )));
    }
    Ok(CurveInvariants {
        mu,
        nu_inf,
        nu2,
        nu3,
        genus: (twelve_g / 12) as u64,
    })
}

/// Image of `Γ~`, the subgroup generated by `Γ(N)` and the elliptic
/// stabilizers of `Γ`.
///
/// The stabilizers are saturated under conjugation by `H`, so the result is
/// the subgroup generated by every elliptic element of `H` and does not
/// depend on which point above each elliptic point of `X_Γ` is used.
pub fn tilde_subgroup(h: &SubgroupImage, cap: u64) -> Result<SubgroupImage> {
    let elliptic = elliptic_counts(h, cap)?;
    normal_closure(h, &elliptic.stabilizer_generators)
}

/// Smallest subgroup of `H` containing `seeds` and normalized by `H`.
pub fn normal_closure(h: &SubgroupImage, seeds: &[MatZN]) -> Result<SubgroupImage> {
    let level = h.level();
    if let Some(x) = seeds.iter().find(|x| !h.contains(x)) {
        return Err(Error::NotContained(format!("{x} is not in H")));
    }
    let mut gens: Vec<MatZN> = Vec::new();
    for x in seeds {
        if !gens.contains(x) {
            gens.push(*x);
        }
    }
    let mut k = closure(level, &gens)?;
    loop {
        let mut grew = false;
        let mut i = 0;
        while i < gens.len() {
            for x in h.generators() {
                let y = gens[i].conjugate_by(x);
                if !k.contains(&y) {
                    gens.push(y);
                    k = closure(level, &gens)?;
                    grew = true;
                }
            }
            i += 1;
        }
        if !grew {
            return Ok(k);
        }
    }
}

/// `4 |G| prod q^2 < N^2 prod (q^2 - 1)`, i.e. `|G| < N^2/4 prod (1 - q^-2)`.
pub fn tilde_order_criterion(level: Level, tilde_order: usize) -> bool {
    let n = level.get() as u128;
    let (num, den) = prime_divisors(n as u64)
        .into_iter()
        .fold((n * n, 1u128), |(num, den), q| {
            let q = q as u128;
            (num * (q * q - 1), den * q * q)
        });
    4 * tilde_order as u128 * den < num
}

/// Decides which effective theorem applies to `X_Γ`.
pub fn applicability(h: &SubgroupImage, cap: u64) -> Result<Applicability> {
    let invariants = curve_invariants(h, cap)?;
    let tilde_image = tilde_subgroup(h, cap)?;
    let tilde_invariants = curve_invariants(&tilde_image, cap)?;
    let verdict = if invariants.nu_inf >= 3 {
        Verdict::MainDirect
    } else if tilde_invariants.nu_inf >= 3 {
        Verdict::MainViaTilde
    } else {
        Verdict::Inapplicable
    };
    let sufficient_criterion_holds = tilde_order_criterion(h.level(), tilde_image.order());
    Ok(Applicability {
        verdict,
        invariants,
        tilde_image,
        tilde_invariants,
        sufficient_criterion_holds,
    })
}

/// Whether `X_G -> X_H` is unramified away from the cusps, for `G ⊆ <H, -I>`.
///
/// Over `j = 1728` and `j = 0` the ramification index at the point of a
/// coset `<G, -I> x` is 1 exactly when `x u x^-1` (`u = s` or `ρ`) lies in
/// `±G` whenever it lies in `±H`; all other points have trivial stabilizers.
pub fn verify_unramified(h: &SubgroupImage, g: &SubgroupImage, cap: u64) -> Result<bool> {
    if g.level() != h.level() {
        return Err(Error::LevelMismatch {
            left: h.level().get(),
            right: g.level().get(),
        });
    }
    if let Some(x) = g.elements().find(|x| !h.contains_up_to_sign(x)) {
        return Err(Error::NotContained(format!(
            "{x} is in G but not in <H, -I>"
        )));
    }
    let level = h.level();
    let tests = [MatZN::s(level), MatZN::rho(level)];
    for x in coset_reps(g, cap)? {
        for u in &tests {
            let y = u.conjugate_by(&x);
            if h.contains_up_to_sign(&y) && !g.contains_up_to_sign(&y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::{element_order, group_order, DEFAULT_ENUMERATION_CAP as CAP};

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    fn std(kind: SubgroupKind, n: u64) -> SubgroupImage {
        standard_subgroup(kind, lv(n))
    }

    #[test]
    fn standard_subgroup_orders() {
        assert_eq!(std(SubgroupKind::Gamma0, 2).order(), 2);
        assert_eq!(std(SubgroupKind::Gamma0, 2).index(), 3);
        assert_eq!(std(SubgroupKind::PrincipalGammaN, 7).order(), 1);
        assert_eq!(std(SubgroupKind::GammaFull, 3).order(), 24);
        // Borel subgroup mod p has order p(p - 1).
        assert_eq!(std(SubgroupKind::Gamma0, 11).order(), 110);
        assert_eq!(std(SubgroupKind::Gamma1, 12).order(), 12);
    }

    #[test]
    fn standard_subgroups_match_membership_filters() {
        for n in 2..=12u64 {
            let l = lv(n);
            let g0 = std(SubgroupKind::Gamma0, n);
            let g1 = std(SubgroupKind::Gamma1, n);
            for m in crate::sl2::enumerate_group(l, CAP).unwrap() {
                let [a, _, c, d] = m.entries();
                assert_eq!(g0.contains(&m), c == 0, "{m}");
                assert_eq!(
                    g1.contains(&m),
                    c == 0 && a == 1 && d == 1 % n as u32,
                    "{m}"
                );
            }
        }
    }

    #[test]
    fn unit_generators_generate() {
        for n in 2..60u64 {
            let gens = unit_group_generators(n);
            let mut seen = BTreeSet::from([1 % n]);
            let mut frontier = vec![1 % n];
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    if seen.insert(x * g % n) {
                        frontier.push(x * g % n);
                    }
                }
            }
            assert_eq!(seen.len() as u64, crate::arith::totient(n), "n = {n}");
        }
    }

    #[test]
    fn cusp_count_examples() {
        assert_eq!(
            cusp_count(&std(SubgroupKind::PrincipalGammaN, 5), CAP).unwrap(),
            12
        );
        assert_eq!(cusp_count(&std(SubgroupKind::Gamma0, 11), CAP).unwrap(), 2);
        assert_eq!(
            cusp_count(&std(SubgroupKind::GammaFull, 7), CAP).unwrap(),
            1
        );
        assert_eq!(
            cusp_count(&std(SubgroupKind::PrincipalGammaN, 2), CAP).unwrap(),
            3
        );
    }

    #[test]
    fn elliptic_examples() {
        let full = elliptic_counts(&std(SubgroupKind::GammaFull, 5), CAP).unwrap();
        assert_eq!((full.nu2(), full.nu3()), (1, 1));
        let g11 = elliptic_counts(&std(SubgroupKind::Gamma0, 11), CAP).unwrap();
        assert_eq!((g11.nu2(), g11.nu3()), (0, 0));
        assert!(g11.stabilizer_generators.is_empty());
        let g17 = elliptic_counts(&std(SubgroupKind::Gamma0, 17), CAP).unwrap();
        assert_eq!((g17.nu2(), g17.nu3()), (2, 0));
        for x in &g17.stabilizer_generators {
            assert_eq!(element_order(x), 4);
        }
    }

    #[test]
    fn stabilizer_generator_orders() {
        for n in 3..=16 {
            for kind in [
                SubgroupKind::Gamma0,
                SubgroupKind::Gamma1,
                SubgroupKind::GammaFull,
            ] {
                let h = std(kind, n);
                let data = elliptic_counts(&h, CAP).unwrap();
                for x in &data.stabilizer_generators {
                    assert!(h.contains(x));
                    assert!([3, 4, 6].contains(&element_order(x)), "{x}");
                }
            }
        }
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&std(SubgroupKind::GammaFull, 4), CAP).unwrap(), 0);
        assert_eq!(genus(&std(SubgroupKind::Gamma0, 11), CAP).unwrap(), 1);
        assert_eq!(
            genus(&std(SubgroupKind::PrincipalGammaN, 7), CAP).unwrap(),
            3
        );
        assert_eq!(genus(&std(SubgroupKind::Gamma0, 2), CAP).unwrap(), 0);
    }

    #[test]
    fn tilde_examples() {
        let g11 = std(SubgroupKind::Gamma0, 11);
        assert_eq!(tilde_subgroup(&g11, CAP).unwrap().order(), 1);
        for n in [2, 5, 9] {
            let triv = std(SubgroupKind::PrincipalGammaN, n);
            assert_eq!(tilde_subgroup(&triv, CAP).unwrap().order(), 1);
        }

        // The elliptic elements of the Borel subgroup mod 17 are the 34
        // elements with eigenvalues ±4; they generate U ⋊ <diag(4, 13)>.
        let g17 = std(SubgroupKind::Gamma0, 17);
        let tilde = tilde_subgroup(&g17, CAP).unwrap();
        assert!(tilde.is_subgroup_of(&g17));
        assert_eq!(tilde.order(), 68);
        assert!(tilde_order_criterion(lv(17), tilde.order()));
        assert!(!tilde_order_criterion(lv(17), 72));
        assert_eq!(cusp_count(&tilde, CAP).unwrap(), 8);
    }

    #[test]
    fn tilde_independent_of_chosen_preimages() {
        // Conjugating each stabilizer generator by an element of H is the
        // same as choosing another preimage of the elliptic point.
        for (kind, n) in [
            (SubgroupKind::Gamma0, 17),
            (SubgroupKind::Gamma0, 13),
            (SubgroupKind::Gamma0, 21),
            (SubgroupKind::Gamma1, 3),
        ] {
            let h = std(kind, n);
            let data = elliptic_counts(&h, CAP).unwrap();
            let base = normal_closure(&h, &data.stabilizer_generators).unwrap();
            let elems: Vec<MatZN> = h.elements().copied().collect();
            for shift in [1usize, 7, 30] {
                let moved: Vec<MatZN> = data
                    .stabilizer_generators
                    .iter()
                    .enumerate()
                    .map(|(i, x)| x.conjugate_by(&elems[(i * shift + 3) % elems.len()]))
                    .collect();
                let other = normal_closure(&h, &moved).unwrap();
                assert_eq!(other, base);
                assert_eq!(
                    cusp_count(&other.with_minus_identity(), CAP).unwrap(),
                    cusp_count(&base, CAP).unwrap()
                );
            }
        }
    }

    #[test]
    fn applicability_examples() {
        let a = applicability(&std(SubgroupKind::PrincipalGammaN, 5), CAP).unwrap();
        assert_eq!(a.verdict, Verdict::MainDirect);
        assert_eq!(a.invariants.nu_inf, 12);

        let a = applicability(&std(SubgroupKind::Gamma0, 17), CAP).unwrap();
        assert_eq!(a.verdict, Verdict::MainViaTilde);
        assert_eq!(a.invariants.nu_inf, 2);
        assert_eq!(a.invariants.genus, 1);
        assert!(a.tilde_invariants.nu_inf >= 3);

        let a = applicability(&std(SubgroupKind::GammaFull, 2), CAP).unwrap();
        assert_eq!(a.verdict, Verdict::Inapplicable);
        assert_eq!(a.tilde_image.order() as u128, group_order(lv(2)));
        assert_eq!(a.tilde_invariants.nu_inf, 1);
    }

    #[test]
    fn unramified_examples() {
        let g17 = std(SubgroupKind::Gamma0, 17);
        let tilde = tilde_subgroup(&g17, CAP).unwrap();
        assert!(verify_unramified(&g17, &tilde, CAP).unwrap());
        assert!(verify_unramified(&g17, &g17.with_minus_identity(), CAP).unwrap());
        for n in [4, 5, 6] {
            let full = std(SubgroupKind::GammaFull, n);
            let triv = std(SubgroupKind::PrincipalGammaN, n);
            assert!(!verify_unramified(&full, &triv, CAP).unwrap());
        }
    }

    #[test]
    fn unramified_requires_containment() {
        let g0 = std(SubgroupKind::Gamma0, 5);
        let full = std(SubgroupKind::GammaFull, 5);
        assert!(matches!(
            verify_unramified(&g0, &full, CAP),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let h = std(SubgroupKind::Gamma0, 7);
        assert!(matches!(cusp_count(&h, 10), Err(Error::CapExceeded { .. })));
        assert!(matches!(
            applicability(&h, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
