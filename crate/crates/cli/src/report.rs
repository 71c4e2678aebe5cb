use std::collections::BTreeMap;
use std::fmt::Write as _;

use jbound_core::bound::{bound_for_verdict, log10, BoundReport, Theorem};
use jbound_core::modcurve::{applicability, CurveInvariants, Verdict};
use jbound_core::sl2::check_cap;
use jbound_core::xreal::{render_scientific, ArithCtx, XReal};
use serde::{Deserialize, Serialize};

use crate::error::{exit, Result};
use crate::job::JobSpec;

pub const SCHEMA: u32 = 1;
pub const SIG_DIGITS: usize = 16;

/// `log10 log10` of the bound is reported once `log10` exceeds this.
const LOG_LOG_THRESHOLD: f64 = 1e6;

pub const CONSTANT_CAVEAT: &str = "C is an absolute effective constant that is not computed here; \
     every bound is reported as an exact multiple of ln C plus an explicit remainder";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Invariants,
    Bound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub theorem: String,
    pub level_used: u64,
    pub prime_power_level: bool,
    pub rounding: String,
    pub precision_bits: usize,
    /// Exact integer coefficient of `ln C`.
    pub ln_c_coefficient: String,
    pub ln_rest: String,
    pub ln_bound: String,
    pub log10_bound: String,
    pub log10_log10_bound: Option<String>,
    pub components: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Command,
    pub job: JobSpec,
    pub subgroup_order: usize,
    pub invariants: CurveInvariants,
    pub tilde_order: usize,
    pub tilde_invariants: CurveInvariants,
    pub verdict: String,
    pub sufficient_criterion_holds: bool,
    pub bound: Option<BoundSummary>,
    pub warnings: Vec<String>,
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::MainDirect => "main-direct",
        Verdict::MainViaTilde => "main-via-tilde",
        Verdict::Inapplicable => "inapplicable",
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.command == Command::Bound && self.bound.is_none() {
            exit::INAPPLICABLE
        } else {
            exit::OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let inv = |i: &CurveInvariants| {
            format!(
                "mu={} nu_inf={} nu2={} nu3={} genus={}",
                i.mu, i.nu_inf, i.nu2, i.nu3, i.genus
            )
        };
        let _ = writeln!(s, "level          {}", self.job.level);
        let _ = writeln!(s, "subgroup       {}", self.job.subgroup.describe());
        let _ = writeln!(s, "|H|            {}", self.subgroup_order);
        let _ = writeln!(s, "X_H            {}", inv(&self.invariants));
        let _ = writeln!(s, "|G~|           {}", self.tilde_order);
        let _ = writeln!(s, "X_G~           {}", inv(&self.tilde_invariants));
        let _ = writeln!(s, "verdict        {}", self.verdict);
        let _ = writeln!(
            s,
            "|G~| criterion {}",
            if self.sufficient_criterion_holds {
                "holds"
            } else {
                "fails"
            }
        );
        if let Some(b) = &self.bound {
            let _ = writeln!(
                s,
                "field          d={} |D|={}",
                self.job.field.degree, self.job.field.abs_disc
            );
            let places: Vec<String> = self
                .job
                .sset
                .finite_places
                .iter()
                .map(|p| format!("{}^{}", p.p, p.f))
                .collect();
            let _ = writeln!(
                s,
                "S              {} infinite, finite [{}]",
                self.job.sset.infinite_places,
                places.join(", ")
            );
            let _ = writeln!(s, "theorem        {} at level {}", b.theorem, b.level_used);
            let _ = writeln!(
                s,
                "precision      {} bits, rounded {}",
                b.precision_bits, b.rounding
            );
            let _ = writeln!(s, "ln C           {}", self.job.ln_c);
            let _ = writeln!(s, "ln h(P) <= k ln C + r");
            let _ = writeln!(s, "  k            {}", b.ln_c_coefficient);
            let _ = writeln!(s, "  r            {}", b.ln_rest);
            let _ = writeln!(s, "ln bound       {}", b.ln_bound);
            let _ = writeln!(s, "log10 bound    {}", b.log10_bound);
            if let Some(ll) = &b.log10_log10_bound {
                let _ = writeln!(s, "log10 log10    {ll}");
            }
            for (k, v) in &b.components {
                let _ = writeln!(s, "  {k:<12} {v}");
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

fn render(ctx: &mut ArithCtx, x: &XReal) -> Result<String> {
    Ok(render_scientific(ctx, x, SIG_DIGITS)?)
}

fn summarize(b: &BoundReport, ctx: &mut ArithCtx) -> Result<BoundSummary> {
    let log10_log10_bound = if b.log10_bound.to_f64() > LOG_LOG_THRESHOLD {
        let ln = ctx.ln(&b.log10_bound)?;
        let ll = log10(&ln, ctx)?;
        Some(render(ctx, &ll)?)
    } else {
        None
    };
    let mut components = BTreeMap::new();
    for (k, v) in &b.components {
        components.insert(k.to_string(), render(ctx, v)?);
    }
    Ok(BoundSummary {
        theorem: b.theorem.name().to_string(),
        level_used: b.level_used.get() as u64,
        prime_power_level: b.prime_power_level,
        rounding: b.rounding.to_string(),
        precision_bits: b.precision_bits,
        ln_c_coefficient: b.ln_c_coefficient.to_string(),
        ln_rest: render(ctx, &b.ln_rest)?,
        ln_bound: render(ctx, &b.ln_bound)?,
        log10_bound: render(ctx, &b.log10_bound)?,
        log10_log10_bound,
        components,
    })
}

fn warnings(bound: Option<&BoundReport>) -> Vec<String> {
    let mut w = vec![CONSTANT_CAVEAT.to_string()];
    if let Some(b) = bound {
        if b.theorem == Theorem::Main1PrimePowerPart {
            let m = b.level_used.get();
            w.push(format!(
                "prime-power level: the via-G~ bound assumes its hypotheses are read at level M = {m}"
            ));
            w.push(format!(
                "prime-power level: Delta and every other level-dependent quantity are evaluated at M = {m}"
            ));
        }
    }
    w
}

/// Runs a job. For [`Command::Bound`] the bound is attached when some
/// theorem applies; an inapplicable subgroup still yields a report.
pub fn run(command: Command, job: &JobSpec) -> Result<Report> {
    let level = job.level()?;
    check_cap(level, job.enumeration_cap)?;
    let h = job.subgroup_image()?;
    let app = applicability(&h, job.enumeration_cap)?;
    let bound = match command {
        Command::Invariants => None,
        Command::Bound => {
            let mut ctx = ArithCtx::new(job.precision_bits, job.rounding)?;
            let ln_c = ctx.from_f64(job.ln_c)?;
            match bound_for_verdict(app.verdict, level, &job.field, &job.sset, &ln_c, &mut ctx) {
                Some(r) => Some((r?, ctx)),
                None => None,
            }
        }
    };
    let warnings = match command {
        Command::Invariants => Vec::new(),
        Command::Bound => warnings(bound.as_ref().map(|(b, _)| b)),
    };
    let bound = match bound {
        Some((b, mut ctx)) => Some(summarize(&b, &mut ctx)?),
        None => None,
    };
    Ok(Report {
        schema: SCHEMA,
        command,
        job: job.clone(),
        subgroup_order: h.order(),
        invariants: app.invariants,
        tilde_order: app.tilde_image.order(),
        tilde_invariants: app.tilde_invariants,
        verdict: verdict_name(app.verdict).to_string(),
        sufficient_criterion_holds: app.sufficient_criterion_holds,
        bound,
        warnings,
    })
}
