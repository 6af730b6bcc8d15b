//! Deterministic parameter sweeps over the trinomial family and the
//! supporting identity and prior-family checks, with a JSON-lines detail stream and
//! an aggregate report.

use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use muperm::circle::{maps_bijectively, proj_line, unit_circle, EvalSet};
use muperm::equiv::{sec3_lh_match, sec3_wydm_match};
use muperm::framework::{
    brute_force_is_permutation, lemma4_check, lh_generate, thm1_generate, wydm_generate,
    Thm1Outcome, TrinomialParams, WydmParams,
};
use muperm::gf::FieldCtx;
use muperm::poly::MobiusMap;

use crate::formats::{ParamsJson, PolyJson, SweepLineJson};

/// One verification family a sweep can run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// Generate the trinomial family and brute-force every accepted member.
    Thm1,
    /// Parity behavior of the distinguished degree-one map.
    Lemma3,
    /// The Möbius-composition identity over both cube-root choices.
    Lemma4,
    /// Correspondence with the `X + X^{1+r(q-1)} + X^{1+s(q-1)}` family.
    Sec3Lh,
    /// Correspondence with the `X^r(X^{(S+T)(q-1)} + X^{T(q-1)} + 1)` family.
    Sec3Wydm,
    /// Brute-force soundness of the two older generator families.
    Props,
}

pub const ALL_CHECKS: [Check; 6] = [
    Check::Thm1,
    Check::Lemma3,
    Check::Lemma4,
    Check::Sec3Lh,
    Check::Sec3Wydm,
    Check::Props,
];

impl FromStr for Check {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Check> {
        Ok(match s {
            "thm1" => Check::Thm1,
            "lemma3" => Check::Lemma3,
            "lemma4" => Check::Lemma4,
            "sec3-lh" => Check::Sec3Lh,
            "sec3-wydm" => Check::Sec3Wydm,
            "props" => Check::Props,
            other => bail!(
                "unknown check {other:?} (expected thm1, lemma3, lemma4, sec3-lh, sec3-wydm or props)"
            ),
        })
    }
}

/// Sweep ranges and check selection. Per-k defaults: exponent parameters
/// `ell, m` range over `1..=2k+1` and `u` over `0..=q` unless capped.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub k_min: u32,
    pub k_max: u32,
    pub ell_max: Option<u32>,
    pub m_max: Option<u32>,
    pub u_max: Option<i64>,
    pub checks: Vec<Check>,
    pub omega_alt: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_min < 1 || self.k_max > 12 {
            bail!("k range must lie within [1, 12]");
        }
        if self.checks.is_empty() {
            bail!("no checks selected");
        }
        Ok(())
    }

    fn ell_range(&self, k: u32) -> u32 {
        self.ell_max.unwrap_or(2 * k + 1)
    }

    fn m_range(&self, k: u32) -> u32 {
        self.m_max.unwrap_or(2 * k + 1)
    }

    fn u_range(&self, k: u32) -> i64 {
        self.u_max.unwrap_or(1 << k)
    }
}

/// Aggregate sweep outcome. `brute_force_failures` counts generated
/// polynomials that failed exhaustive evaluation; `correspondence_failures`
/// aggregates every other falsified check (lemma identities, parity
/// behavior, prior-family soundness, equivalence matches). Both must be zero
/// on a correct implementation.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub total: u64,
    pub accepted: u64,
    pub degenerate: u64,
    pub brute_force_failures: u64,
    pub correspondence_failures: u64,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SweepReport {
    pub fn failures(&self) -> u64 {
        self.brute_force_failures + self.correspondence_failures
    }
}

fn ctx_for(k: u32, omega_alt: bool) -> Result<FieldCtx> {
    let ctx = if omega_alt {
        FieldCtx::new_alt_omega(k)
    } else {
        FieldCtx::new(k)
    };
    ctx.map_err(|e| anyhow::anyhow!("field construction failed: {e}"))
}

/// Runs the configured checks in ascending parameter order, writing one
/// JSON line per trinomial-family instance to `detail`. Deterministic:
/// identical configs produce byte-identical detail streams.
pub fn run_sweep(config: &SweepConfig, detail: &mut dyn Write) -> Result<SweepReport> {
    config.validate()?;
    let start = Instant::now();
    let mut report = SweepReport {
        total: 0,
        accepted: 0,
        degenerate: 0,
        brute_force_failures: 0,
        correspondence_failures: 0,
        elapsed: Duration::ZERO,
    };
    let family_checks: Vec<Check> = config
        .checks
        .iter()
        .copied()
        .filter(|c| matches!(c, Check::Thm1 | Check::Sec3Lh | Check::Sec3Wydm))
        .collect();

    for k in config.k_min..=config.k_max {
        let ctx = ctx_for(k, config.omega_alt)?;
        if !family_checks.is_empty() {
            sweep_family(config, &family_checks, &ctx, detail, &mut report)?;
        }
        if config.checks.contains(&Check::Lemma3) && !lemma3_holds(&ctx) {
            report.correspondence_failures += 1;
        }
        if config.checks.contains(&Check::Lemma4) {
            sweep_lemma4(k, config.omega_alt, &mut report)?;
        }
        if config.checks.contains(&Check::Props) && k <= 4 {
            sweep_props(&ctx, &mut report)?;
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn sweep_family(
    config: &SweepConfig,
    checks: &[Check],
    ctx: &FieldCtx,
    detail: &mut dyn Write,
    report: &mut SweepReport,
) -> Result<()> {
    let k = ctx.k();
    for ell in 1..=config.ell_range(k) {
        for m in 1..=config.m_range(k) {
            if ell == m {
                continue;
            }
            for u in 0..=config.u_range(k) {
                let tp = TrinomialParams::new(k, ell, m, u)
                    .map_err(|e| anyhow::anyhow!("invalid sweep parameters: {e}"))?;
                report.total += 1;
                let line = match thm1_generate(&tp) {
                    Thm1Outcome::Rejected { .. } => SweepLineJson {
                        params: params_json(&tp),
                        poly: None,
                        accepted: false,
                        degenerate: false,
                        brute_force_ok: false,
                    },
                    Thm1Outcome::Generated { poly, degenerate } => {
                        report.accepted += 1;
                        if degenerate {
                            report.degenerate += 1;
                        }
                        let ok = if checks.contains(&Check::Thm1) {
                            let ok = brute_force_is_permutation(ctx, &poly)
                                .map_err(|e| anyhow::anyhow!("brute force failed: {e}"))?;
                            if !ok {
                                report.brute_force_failures += 1;
                            }
                            ok
                        } else {
                            true
                        };
                        if k <= 4 {
                            run_correspondences(checks, ctx, &tp, report);
                        }
                        SweepLineJson {
                            params: params_json(&tp),
                            poly: Some(PolyJson::of(ctx, &poly)),
                            accepted: true,
                            degenerate,
                            brute_force_ok: ok,
                        }
                    }
                };
                serde_json::to_writer(&mut *detail, &line).context("writing detail line")?;
                detail.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn run_correspondences(
    checks: &[Check],
    ctx: &FieldCtx,
    tp: &TrinomialParams,
    report: &mut SweepReport,
) {
    if checks.contains(&Check::Sec3Lh) {
        match sec3_lh_match(ctx, tp) {
            Ok(rec) if rec.verified => {}
            _ => report.correspondence_failures += 1,
        }
    }
    if checks.contains(&Check::Sec3Wydm) {
        match sec3_wydm_match(ctx, tp) {
            Ok(None) => {} // equal parity: not applicable
            Ok(Some(rec)) if rec.verified => {}
            _ => report.correspondence_failures += 1,
        }
    }
}

/// The parity law: the distinguished degree-one map permutes the circle for
/// even `k` and interchanges circle and projective line for odd `k`.
pub fn lemma3_holds(ctx: &FieldCtx) -> bool {
    let rho = MobiusMap::rho(ctx);
    let mu = EvalSet::Circle(unit_circle(ctx));
    let line = EvalSet::Line(proj_line(ctx));
    if ctx.k() % 2 == 0 {
        maps_bijectively(ctx, &rho, &mu, &mu)
    } else {
        maps_bijectively(ctx, &rho, &mu, &line) && maps_bijectively(ctx, &rho, &line, &mu)
    }
}

fn sweep_lemma4(k: u32, omega_alt: bool, report: &mut SweepReport) -> Result<()> {
    let ctx = ctx_for(k, omega_alt)?;
    for ell in 1..=5u32 {
        for m in 1..=5u32 {
            if ell == m {
                continue;
            }
            match lemma4_check(&ctx, ell, m) {
                Ok(true) => {}
                _ => report.correspondence_failures += 1,
            }
        }
    }
    Ok(())
}

fn sweep_props(ctx: &FieldCtx, report: &mut SweepReport) -> Result<()> {
    let k = ctx.k();
    let q = ctx.q();
    // the (S+T, T)-family: r ranges over a full residue window; permutation
    // must hold exactly when gcd(r, q-1) = 1
    for s in [1u32, 3] {
        for t in [2u32, 4] {
            for j in 0..q {
                let qp1 = (q + 1) as u128;
                let st = ((1u128 << s) + (1u128 << t)) % qp1;
                let r = st as u64 + j * (q + 1);
                let r = if r == 0 { q + 1 } else { r };
                let p = match WydmParams::new(k, s, t, r) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                let g = wydm_generate(ctx, &p);
                let is_perm = brute_force_is_permutation(ctx, &g)
                    .map_err(|e| anyhow::anyhow!("brute force failed: {e}"))?;
                let expect = gcd(r, q - 1) == 1;
                if is_perm != expect {
                    report.correspondence_failures += 1;
                }
            }
        }
    }
    // the modular-inverse family: every valid n must generate a permutation
    for n in 1..=(2 * k + 2) {
        if let Ok((_, g)) = lh_generate(ctx, n) {
            let ok = brute_force_is_permutation(ctx, &g)
                .map_err(|e| anyhow::anyhow!("brute force failed: {e}"))?;
            if !ok {
                report.correspondence_failures += 1;
            }
        }
    }
    Ok(())
}

fn params_json(tp: &TrinomialParams) -> ParamsJson {
    ParamsJson {
        k: tp.k,
        ell: tp.ell,
        m: tp.m,
        u: tp.u,
        d1: tp.d1,
        d2: tp.d2,
        d3: tp.d3,
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
