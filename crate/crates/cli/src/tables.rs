use std::fmt::Write as _;

use jbound_core::modcurve::{curve_invariants, standard_subgroup};
use jbound_core::sl2::{check_cap, Level};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::job::Family;

pub const HEADER: &str = "family   level        mu  nu_inf   nu2   nu3  genus";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: Family,
    pub level: u64,
    pub mu: u64,
    pub nu_inf: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub genus: u64,
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Invariants of each family at each level in `from..=to`, ordered by level
/// and then by the order of `families`.
pub fn table(
    from: u64,
    to: u64,
    families: &[Family],
    primes_only: bool,
    cap: u64,
) -> Result<Vec<TableRow>> {
    let mut jobs = Vec::new();
    for n in from..=to {
        if primes_only && !is_prime(n) {
            continue;
        }
        let level = Level::new(n)?;
        check_cap(level, cap)?;
        jobs.extend(families.iter().map(|&f| (f, level)));
    }
    jobs.into_par_iter()
        .map(|(family, level)| {
            let inv = curve_invariants(&standard_subgroup(family.kind(), level), cap)?;
            Ok(TableRow {
                family,
                level: level.get() as u64,
                mu: inv.mu,
                nu_inf: inv.nu_inf,
                nu2: inv.nu2,
                nu3: inv.nu3,
                genus: inv.genus,
            })
        })
        .collect()
}

pub fn to_text(rows: &[TableRow]) -> String {
    let mut s = format!("{HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{:<8}{:>6}{:>10}{:>8}{:>6}{:>6}{:>7}",
            r.family.name(),
            r.level,
            r.mu,
            r.nu_inf,
            r.nu2,
            r.nu3,
            r.genus
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use jbound_core::sl2::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn rows_are_ordered() {
        let fams = [Family::Gamma1, Family::Gamma0];
        let rows = table(2, 12, &fams, false, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(rows.len(), 22);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.level, 2 + i as u64 / 2);
            assert_eq!(r.family, fams[i % 2]);
        }
        let x0_11 = rows
            .iter()
            .find(|r| r.level == 11 && r.family == Family::Gamma0)
            .unwrap();
        assert_eq!((x0_11.mu, x0_11.nu_inf, x0_11.genus), (12, 2, 1));
    }

    #[test]
    fn primes_and_empty_ranges() {
        let rows = table(2, 20, &[Family::Gamma], true, DEFAULT_ENUMERATION_CAP).unwrap();
        let levels: Vec<u64> = rows.iter().map(|r| r.level).collect();
        assert_eq!(levels, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(table(9, 8, &[Family::Gamma], false, 1).unwrap().is_empty());
        assert_eq!(to_text(&[]), format!("{HEADER}\n"));
    }

    #[test]
    fn header_matches_columns() {
        let row = TableRow {
            family: Family::Gamma0,
            level: 1,
            mu: 1,
            nu_inf: 1,
            nu2: 1,
            nu3: 1,
            genus: 1,
        };
        let text = to_text(&[row]);
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line.len(), HEADER.len());
    }
}
