use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{format_rational, rat, serde_rational, Rational};
use crate::characters::{load_character_table, Parity, Provenance};
use crate::dims::FormKind;
use crate::error::{Error, Result};
use crate::group::{SubgroupSpec, DEFAULT_MAX_LEVEL};
use crate::multiplicity::{MultiplicityEngine, MultiplicitySeries, ParityClass};
use crate::pair::QuotientPair;
use crate::signature::{area_constant_c, SignatureRecord};

use super::{
    check_decomposition_identity, check_tail, detect_slope, monitor_lower_bound, IdentityCheck,
    LowerBoundReport, SlopeReport, TailReport,
};

const LOWER_BOUND_RULE: &str = "mult_k >= deg * dim M_{k - (k mod 2) - n0}(Gamma), n0 even";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSelection {
    All,
    /// Characters or orbit labels.
    Named(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct VerificationConfig {
    pub gamma: SubgroupSpec,
    pub gamma1: SubgroupSpec,
    pub kmax: i64,
    pub kinds: Vec<FormKind>,
    pub reps: RepSelection,
    pub split: bool,
    pub offset_bound: u64,
    pub table: Option<PathBuf>,
    pub max_level: u32,
}

impl VerificationConfig {
    pub fn new(gamma: SubgroupSpec, gamma1: SubgroupSpec, kmax: i64) -> Self {
        VerificationConfig {
            gamma,
            gamma1,
            kmax,
            kinds: vec![FormKind::M, FormKind::S],
            reps: RepSelection::All,
            split: false,
            offset_bound: 24,
            table: None,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairMeta {
    pub gamma: String,
    pub gamma1: String,
    pub level: u32,
    pub quotient_order: usize,
    pub mu_sl: usize,
    pub mu_proj: usize,
    #[serde(rename = "minus_I_in_gamma")]
    pub minus_i_gamma: bool,
    #[serde(rename = "minus_I_in_gamma1")]
    pub minus_i_gamma1: bool,
    pub c: String,
    pub table: Provenance,
    pub signature_gamma: SignatureRecord,
    pub signature_gamma1: SignatureRecord,
}

/// Sum of `deg^2` over the irreducibles of one parity class, against `mu_proj`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreflightCheck {
    pub parity_class: ParityClass,
    pub degree_square_sum: u64,
    pub mu_proj: usize,
    pub holds: bool,
}

/// Growth of `dim M_k(Gamma_1)` against `c` times each reading of the index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringCheck {
    #[serde(with = "serde_rational")]
    pub c_gamma1: Rational,
    #[serde(with = "serde_rational")]
    pub c_times_mu_proj: Rational,
    #[serde(with = "serde_rational")]
    pub c_times_mu_sl: Rational,
    pub matches_mu_proj: bool,
    pub matches_mu_sl: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub rep: String,
    pub members: usize,
    pub degree_each: u64,
    pub parity_class: ParityClass,
    pub period: u64,
    pub slope: Option<SlopeReport>,
    pub tail: Option<TailReport>,
    /// Weights outside the parity class with a nonzero multiplicity.
    pub parity_violations: Vec<i64>,
    pub lower_bound: LowerBoundReport,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindReport {
    pub kind: FormKind,
    pub identity_holds: bool,
    pub identity: Vec<IdentityCheck>,
    pub reps: Vec<RepReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub tool: String,
    pub version: String,
    pub kmax: i64,
    pub offset_bound: u64,
    pub split: bool,
    pub pair: PairMeta,
    pub preflight: Vec<PreflightCheck>,
    pub covering: CoveringCheck,
    pub lower_bound_rule: String,
    pub kinds: Vec<KindReport>,
    pub findings: Vec<String>,
    pub pass: bool,
}

struct Unit {
    orbit: usize,
    series: MultiplicitySeries,
}

fn preflight(engine: &MultiplicityEngine) -> Result<Vec<PreflightCheck>> {
    let g = engine.pair.group();
    let classes: Vec<ParityClass> = match g.iota() {
        None => vec![ParityClass::All],
        Some(_) if g.iota_trivial() => vec![ParityClass::Even],
        Some(_) => vec![ParityClass::Even, ParityClass::Odd],
    };
    let mut out = Vec::new();
    for pc in classes {
        let mut sum = 0;
        for (i, ch) in engine.table.characters.iter().enumerate() {
            let parity = crate::characters::parity(&engine.table, i, g)?;
            let class = ParityClass::of(g, parity);
            if class == pc || (pc == ParityClass::All && parity == Parity::Unconstrained) {
                sum += ch.degree * ch.degree;
            }
        }
        out.push(PreflightCheck {
            parity_class: pc,
            degree_square_sum: sum,
            mu_proj: g.mu_proj(),
            holds: sum == g.mu_proj() as u64,
        });
    }
    Ok(out)
}

fn selected(engine: &MultiplicityEngine, sel: &RepSelection) -> Result<Vec<usize>> {
    match sel {
        RepSelection::All => Ok((0..engine.rational.len()).collect()),
        RepSelection::Named(names) => {
            let mut v = names.iter().map(|n| engine.find_orbit(n)).collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            v.dedup();
            Ok(v)
        }
    }
}

fn rep_report(
    engine: &MultiplicityEngine,
    unit: &Unit,
    config: &VerificationConfig,
    findings: &mut Vec<String>,
) -> Result<RepReport> {
    let c = engine.pair.c();
    let series = &unit.series;
    let period = engine.period(unit.orbit);
    let (slope, tail) = match detect_slope(series, period, c) {
        Ok(r) => {
            let t = check_tail(series, &r, c);
            (Some(r), Some(t))
        }
        Err(e @ Error::NotQuasiLinear { .. }) => {
            findings.push(e.to_string());
            (None, None)
        }
        Err(e) => return Err(e),
    };
    let parity_violations = series.parity_violations();
    let lower_bound =
        monitor_lower_bound(series, engine.pair.signature_gamma(), config.offset_bound, config.kmax)?;
    let slope_ok = slope.as_ref().is_some_and(|s| s.exact_match);
    let tail_ok = tail
        .as_ref()
        .is_some_and(|t| t.periodic && t.liminf_bound_holds && t.deviation_bound_holds);
    let pass = slope_ok && tail_ok && parity_violations.is_empty() && lower_bound.offset.is_some();
    if !pass {
        findings.push(format!("{} ({}): verification failed", series.rep, series.kind));
    }
    Ok(RepReport {
        rep: series.rep.clone(),
        members: series.members,
        degree_each: series.degree_each,
        parity_class: series.parity_class,
        period,
        slope,
        tail,
        parity_violations,
        lower_bound,
        pass,
    })
}

fn kind_report(
    engine: &MultiplicityEngine,
    config: &VerificationConfig,
    kind: FormKind,
    orbits: &[usize],
) -> Result<(KindReport, Vec<String>)> {
    let mut findings = Vec::new();
    let weights: Vec<i64> = (2..=config.kmax).collect();
    let (identity, identity_holds) = match check_decomposition_identity(engine, kind, &weights) {
        Ok(rows) => (rows, true),
        Err(e @ Error::IdentityViolation { .. }) => {
            findings.push(format!("{kind}: {e}"));
            (Vec::new(), false)
        }
        Err(e) => return Err(e),
    };
    let totals = orbits
        .par_iter()
        .map(|&i| engine.orbit_series(i, kind, &weights).map(|s| (i, s)))
        .collect::<Result<Vec<_>>>()?;
    let mut units = Vec::new();
    for (orbit, total) in totals {
        let rep = &engine.rational[orbit];
        if config.split && rep.size() > 1 {
            match total.split(&rep.orbit) {
                Ok(parts) => units.extend(parts.into_iter().map(|series| Unit { orbit, series })),
                Err(e @ Error::IndivisibleOrbitTotal { .. }) => {
                    findings.push(e.to_string());
                    units.push(Unit { orbit, series: total });
                }
                Err(e) => return Err(e),
            }
        } else {
            units.push(Unit { orbit, series: total });
        }
    }
    let reps = units
        .par_iter()
        .map(|u| {
            let mut f = Vec::new();
            rep_report(engine, u, config, &mut f).map(|r| (r, f))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(reps.len());
    for (r, f) in reps {
        findings.extend(f);
        out.push(r);
    }
    Ok((KindReport { kind, identity_holds, identity, reps: out }, findings))
}

pub fn run_verify(config: &VerificationConfig) -> Result<VerifyReport> {
    if config.kmax < 4 {
        return Err(Error::Config(format!("kmax {} is below 4", config.kmax)));
    }
    if config.offset_bound % 2 != 0 {
        return Err(Error::Config(format!("offset bound {} must be even", config.offset_bound)));
    }
    let pair = QuotientPair::with_limit(config.gamma.clone(), config.gamma1.clone(), config.max_level)?;
    let table = match &config.table {
        Some(path) => load_character_table(path, pair.group())?,
        None => pair.builtin_table()?,
    };
    let engine = MultiplicityEngine::new(pair, table)?;
    let g = engine.pair.group();

    let c = engine.pair.c().clone();
    let c_gamma1 = area_constant_c(engine.pair.signature_gamma1())?;
    let covering = CoveringCheck {
        c_times_mu_proj: &c * rat(g.mu_proj() as i64, 1),
        c_times_mu_sl: &c * rat(g.mu_sl() as i64, 1),
        matches_mu_proj: c_gamma1 == &c * rat(g.mu_proj() as i64, 1),
        matches_mu_sl: c_gamma1 == &c * rat(g.mu_sl() as i64, 1),
        c_gamma1,
    };

    let meta = PairMeta {
        gamma: config.gamma.to_string(),
        gamma1: config.gamma1.to_string(),
        level: g.level(),
        quotient_order: g.order(),
        mu_sl: g.mu_sl(),
        mu_proj: g.mu_proj(),
        minus_i_gamma: g.ambient().contains_minus_i(),
        minus_i_gamma1: g.normal().contains_minus_i(),
        c: format_rational(&c),
        table: engine.table.provenance,
        signature_gamma: engine.pair.signature_gamma().record()?,
        signature_gamma1: engine.pair.signature_gamma1().record()?,
    };

    let preflight = preflight(&engine)?;
    let mut findings = Vec::new();
    for p in preflight.iter().filter(|p| !p.holds) {
        findings.push(format!(
            "preflight: degree squares in {} sum to {}, mu_proj is {}",
            p.parity_class, p.degree_square_sum, p.mu_proj
        ));
    }
    if !covering.matches_mu_proj {
        findings.push("covering: c(Gamma_1) != c(Gamma) * mu_proj".into());
    }

    let orbits = selected(&engine, &config.reps)?;
    let mut kinds = Vec::new();
    for &kind in &config.kinds {
        let (report, f) = kind_report(&engine, config, kind, &orbits)?;
        findings.extend(f);
        kinds.push(report);
    }
    let pass = findings.is_empty()
        && kinds.iter().all(|k| k.identity_holds && k.reps.iter().all(|r| r.pass));
    Ok(VerifyReport {
        tool: "modmult".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        kmax: config.kmax,
        offset_bound: config.offset_bound,
        split: config.split,
        pair: meta,
        preflight,
        covering,
        lower_bound_rule: LOWER_BOUND_RULE.into(),
        kinds,
        findings,
        pass,
    })
}

impl VerifyReport {
    /// Human-readable summary, one line per representation and kind.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let p = &self.pair;
        let _ = writeln!(
            s,
            "pair {}/{}  level {}  |G| = {}  mu_proj = {}  c = {}",
            p.gamma, p.gamma1, p.level, p.quotient_order, p.mu_proj, p.c
        );
        for k in &self.kinds {
            let _ = writeln!(s, "[{}] decomposition identity: {}", k.kind, if k.identity_holds { "ok" } else { "FAILED" });
            for r in &k.reps {
                let slope = r
                    .slope
                    .as_ref()
                    .map_or("not quasi-linear".to_string(), |sl| {
                        format!("slope {} target {}", format_rational(&sl.slope), format_rational(&sl.target))
                    });
                let n0 = r.lower_bound.offset.map_or("none".to_string(), |n| n.to_string());
                let _ = writeln!(
                    s,
                    "  {:<16} {:<5} {}  n0' = {}  {}",
                    r.rep,
                    r.parity_class.to_string(),
                    slope,
                    n0,
                    if r.pass { "PASS" } else { "FAIL" }
                );
            }
        }
        for f in &self.findings {
            let _ = writeln!(s, "finding: {f}");
        }
        let _ = writeln!(s, "{}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}
