//! Job specifications: a JSON document, command-line flags, or both (flags
//! win field by field).

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use jbound_core::bound::{FinitePlace, NumberFieldSpec, SSetSpec};
use jbound_core::modcurve::{standard_subgroup, SubgroupKind};
use jbound_core::sl2::{closure, Level, MatZN, SubgroupImage, DEFAULT_ENUMERATION_CAP};
use jbound_core::xreal::Rounding;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const DEFAULT_PRECISION: usize = 128;
pub const MIN_PRECISION: usize = 64;
pub const MAX_PRECISION: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gamma0,
    Gamma1,
    /// The principal congruence subgroup `Γ(N)`.
    Gamma,
    /// All of SL2(Z).
    Full,
}

impl Family {
    pub fn kind(self) -> SubgroupKind {
        match self {
            Family::Gamma0 => SubgroupKind::Gamma0,
            Family::Gamma1 => SubgroupKind::Gamma1,
            Family::Gamma => SubgroupKind::PrincipalGammaN,
            Family::Full => SubgroupKind::GammaFull,
        }
    }

    pub fn name(self) -> &'static str {
        self.kind().name()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Family(Family),
    Generators { generators: Vec<[i64; 4]> },
}

impl SubgroupSpec {
    pub fn describe(&self) -> String {
        match self {
            SubgroupSpec::Family(f) => f.name().to_string(),
            SubgroupSpec::Generators { generators } => {
                format!(
                    "generated by {} matri{}",
                    generators.len(),
                    if generators.len() == 1 { "x" } else { "ces" }
                )
            }
        }
    }
}

/// A complete, validated job.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub level: u64,
    pub subgroup: SubgroupSpec,
    pub field: NumberFieldSpec,
    pub sset: SSetSpec,
    pub ln_c: f64,
    pub precision_bits: usize,
    pub rounding: Rounding,
    pub enumeration_cap: u64,
}

impl JobSpec {
    pub fn level(&self) -> Result<Level> {
        Ok(Level::new(self.level)?)
    }

    /// The image of the subgroup in SL2(Z/N).
    pub fn subgroup_image(&self) -> Result<SubgroupImage> {
        let level = self.level()?;
        match &self.subgroup {
            SubgroupSpec::Family(f) => Ok(standard_subgroup(f.kind(), level)),
            SubgroupSpec::Generators { generators } => {
                let gens = generators
                    .iter()
                    .map(|[a, b, c, d]| MatZN::new(*a, *b, *c, *d, level))
                    .collect::<jbound_core::Result<Vec<_>>>()?;
                Ok(closure(level, &gens)?)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        self.level()?;
        self.field.validate()?;
        self.sset.validate(&self.field)?;
        if !self.ln_c.is_finite() {
            return Err(CliError::Spec("lnC must be finite".into()));
        }
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&self.precision_bits) {
            return Err(CliError::Spec(format!(
                "precision must be between {MIN_PRECISION} and {MAX_PRECISION} bits"
            )));
        }
        if let SubgroupSpec::Generators { generators } = &self.subgroup {
            if generators.is_empty() {
                return Err(CliError::Spec("empty generator list".into()));
            }
        }
        Ok(())
    }
}

/// Job fields as read from JSON; everything optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialJob {
    pub level: Option<u64>,
    pub subgroup: Option<SubgroupSpec>,
    pub field: Option<NumberFieldSpec>,
    pub sset: Option<SSetSpec>,
    pub ln_c: Option<f64>,
    pub precision_bits: Option<usize>,
    pub rounding: Option<Rounding>,
    pub enumeration_cap: Option<u64>,
}

impl PartialJob {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Spec(e.to_string()))
    }

    /// Fields of `self` take precedence over those of `base`.
    pub fn over(self, base: PartialJob) -> PartialJob {
        PartialJob {
            level: self.level.or(base.level),
            subgroup: self.subgroup.or(base.subgroup),
            field: self.field.or(base.field),
            sset: self.sset.or(base.sset),
            ln_c: self.ln_c.or(base.ln_c),
            precision_bits: self.precision_bits.or(base.precision_bits),
            rounding: self.rounding.or(base.rounding),
            enumeration_cap: self.enumeration_cap.or(base.enumeration_cap),
        }
    }

    /// Fills defaults and validates. Without an explicit S the set
    /// consists of `degree` archimedean places (a totally real field).
    pub fn finish(self) -> Result<JobSpec> {
        let level = self
            .level
            .ok_or_else(|| CliError::Spec("missing level".into()))?;
        let subgroup = self
            .subgroup
            .ok_or_else(|| CliError::Spec("missing subgroup".into()))?;
        let field = self.field.unwrap_or_else(NumberFieldSpec::rationals);
        let sset = self
            .sset
            .unwrap_or_else(|| SSetSpec::infinite_only(field.degree));
        let job = JobSpec {
            level,
            subgroup,
            field,
            sset,
            ln_c: self.ln_c.unwrap_or(0.0),
            precision_bits: self.precision_bits.unwrap_or(DEFAULT_PRECISION),
            rounding: self.rounding.unwrap_or(Rounding::Up),
            enumeration_cap: self.enumeration_cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
        };
        job.validate()?;
        Ok(job)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Up,
    Down,
}

/// Flags shared by `invariants` and `bound`.
#[derive(Clone, Debug, Default, Args)]
pub struct JobArgs {
    /// JSON job file; `-` reads standard input.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    pub level: Option<u64>,
    #[arg(long, value_enum, value_name = "KIND", conflicts_with = "gens")]
    pub subgroup: Option<Family>,
    /// Generators as `a,b,c,d;a,b,c,d;...` (rows of each matrix in order).
    #[arg(long, value_name = "MATRICES", allow_hyphen_values = true)]
    pub gens: Option<String>,
    /// Degree d = [K:Q].
    #[arg(long, value_name = "d")]
    pub degree: Option<u64>,
    /// Absolute discriminant |D|.
    #[arg(long, value_name = "|D|")]
    pub disc: Option<u64>,
    /// Number of archimedean places of K.
    #[arg(long = "inf-places", value_name = "r")]
    pub inf_places: Option<u64>,
    /// A finite place of S as `p^f` (or `p` for f = 1); repeatable.
    #[arg(long, value_name = "p^f")]
    pub place: Vec<String>,
    /// Natural logarithm of the absolute constant C.
    #[arg(long = "lnC", value_name = "x", allow_negative_numbers = true)]
    pub ln_c: Option<f64>,
    /// Mantissa precision in bits.
    #[arg(long, value_name = "bits")]
    pub precision: Option<usize>,
    #[arg(long, value_enum)]
    pub rounding: Option<RoundingArg>,
    /// Largest group order the enumeration may touch.
    #[arg(long, value_name = "ORDER")]
    pub cap: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

pub fn parse_place(s: &str) -> Result<FinitePlace> {
    let bad = || CliError::Spec(format!("cannot parse place {s:?}; expected p^f"));
    let (p, f) = match s.split_once('^') {
        Some((p, f)) => (p, f),
        None => (s, "1"),
    };
    Ok(FinitePlace {
        p: p.trim().parse().map_err(|_| bad())?,
        f: f.trim().parse().map_err(|_| bad())?,
    })
}

pub fn parse_generators(s: &str) -> Result<Vec<[i64; 4]>> {
    s.split(';')
        .filter(|m| !m.trim().is_empty())
        .map(|m| {
            let entries = m
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| CliError::Spec(format!("matrix {m:?}: {e}")))?;
            <[i64; 4]>::try_from(entries)
                .map_err(|_| CliError::Spec(format!("matrix {m:?} needs four entries")))
        })
        .collect()
}

impl JobArgs {
    fn read_spec(&self) -> Result<PartialJob> {
        let Some(path) = &self.spec else {
            return Ok(PartialJob::default());
        };
        let mut text = String::new();
        let read = if path.as_os_str() == "-" {
            std::io::stdin().read_to_string(&mut text).map(|_| ())
        } else {
            std::fs::read_to_string(path).map(|t| text = t)
        };
        read.map_err(|source| CliError::Read {
            path: path.clone(),
            source,
        })?;
        PartialJob::from_json(&text)
    }

    /// The flags as a partial job. Field and S-set flags modify whatever
    /// `base` provides.
    fn overrides(&self, base: &PartialJob) -> Result<PartialJob> {
        let subgroup = match (&self.subgroup, &self.gens) {
            (Some(f), _) => Some(SubgroupSpec::Family(*f)),
            (None, Some(g)) => Some(SubgroupSpec::Generators {
                generators: parse_generators(g)?,
            }),
            (None, None) => None,
        };
        let field = if self.degree.is_some() || self.disc.is_some() {
            let mut f = base.field.unwrap_or_else(NumberFieldSpec::rationals);
            if let Some(d) = self.degree {
                f.degree = d;
            }
            if let Some(disc) = self.disc {
                f.abs_disc = disc;
            }
            Some(f)
        } else {
            None
        };
        let sset = if self.inf_places.is_some() || !self.place.is_empty() {
            let degree = field.or(base.field).map_or(1, |f| f.degree);
            let mut s = base
                .sset
                .clone()
                .unwrap_or_else(|| SSetSpec::infinite_only(degree));
            if let Some(r) = self.inf_places {
                s.infinite_places = r;
            }
            if !self.place.is_empty() {
                s.finite_places = self
                    .place
                    .iter()
                    .map(|p| parse_place(p))
                    .collect::<Result<_>>()?;
            }
            Some(s)
        } else {
            None
        };
        Ok(PartialJob {
            level: self.level,
            subgroup,
            field,
            sset,
            ln_c: self.ln_c,
            precision_bits: self.precision,
            rounding: self.rounding.map(|r| match r {
                RoundingArg::Up => Rounding::Up,
                RoundingArg::Down => Rounding::Down,
            }),
            enumeration_cap: self.cap,
        })
    }

    pub fn job(&self) -> Result<JobSpec> {
        let base = self.read_spec()?;
        self.overrides(&base)?.over(base).finish()
    }
}
