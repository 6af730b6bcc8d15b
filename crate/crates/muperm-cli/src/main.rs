//! `muperm` — generate and verify permutation trinomials of binary fields
//! that reduce to maps on the unit-circle subgroup.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use muperm::equiv::{are_equivalent, sec3_lh_match, sec3_wydm_match};
use muperm::framework::{
    brute_force_is_permutation, criterion_lemma1, factor_as_wrapped, lemma4_check, lh_generate,
    rewrite_lemma2, thm1_generate, wydm_generate, Thm1Outcome, TrinomialParams, WydmParams,
};
use muperm::gf::FieldCtx;
use muperm::poly::SparsePoly;

use muperm_cli::formats::{PolyJson, RatFuncJson, Sec3RecordJson, WitnessJson};
use muperm_cli::sweep::{lemma3_holds, run_sweep, Check, SweepConfig, ALL_CHECKS};

#[derive(Parser)]
#[command(
    name = "muperm",
    about = "Permutation trinomials of F_{q^2} via the unit-circle reduction",
    version
)]
struct Cli {
    /// Use the alternative cube root of unity (omega squared).
    #[arg(long, global = true)]
    omega_alt: bool,
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    table: bool,
    /// Write primary output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a trinomial-family member from (k, ell, m, u).
    GenThm1 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        u: i64,
    },
    /// Generate an (S+T, T)-family member from (k, s, t, r).
    GenWydm {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        r: u64,
    },
    /// Generate a modular-inverse-family member from (k, n).
    GenLh {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// Check a polynomial file with both the circle criterion and brute force.
    Verify { poly: PathBuf },
    /// Rewrite a wrapped polynomial as a rational map on the circle.
    Reduce { poly: PathBuf },
    /// Search for a multiplicative-equivalence witness between two files.
    Equiv { left: PathBuf, right: PathBuf },
    /// Verify a lemma family: "lemma3" (parity) or "lemma4" (composition).
    LemmaCheck {
        which: String,
        #[arg(long, default_value_t = 1)]
        k_min: u32,
        #[arg(long, default_value_t = 8)]
        k_max: u32,
    },
    /// Run both prior-family correspondences over all accepted instances.
    SurveySec3 {
        #[arg(long, default_value_t = 2)]
        k_min: u32,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long)]
        u_max: Option<i64>,
    },
    /// Full parameter sweep with selectable checks.
    Sweep {
        #[arg(long, default_value_t = 2)]
        k_min: u32,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long)]
        ell_max: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        u_max: Option<i64>,
        /// Comma-separated: thm1,lemma3,lemma4,sec3-lh,sec3-wydm,props.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(failures) if failures == 0 => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} check(s) failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Output sink honoring `--out`.
struct Sink {
    out: Box<dyn Write>,
}

impl Sink {
    fn new(path: &Option<PathBuf>) -> Result<Sink> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
            None => Box::new(std::io::stdout()),
        };
        Ok(Sink { out })
    }

    fn emit_json<T: serde::Serialize>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    fn line(&mut self, s: &str) -> Result<()> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }
}

fn ctx_new(k: u32, omega_alt: bool) -> Result<FieldCtx> {
    let ctx = if omega_alt {
        FieldCtx::new_alt_omega(k)
    } else {
        FieldCtx::new(k)
    };
    ctx.map_err(|e| anyhow!("field construction failed: {e}"))
}

fn load_poly(path: &PathBuf, omega_alt: bool) -> Result<(FieldCtx, SparsePoly)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pj: PolyJson = serde_json::from_str(&text).context("parsing polynomial JSON")?;
    let ctx = ctx_new(pj.k, omega_alt)?;
    let poly = pj.decode(&ctx)?;
    Ok((ctx, poly))
}

fn run(cli: Cli) -> Result<u64> {
    let mut sink = Sink::new(&cli.out)?;
    match cli.command {
        Command::GenThm1 { k, ell, m, u } => {
            let ctx = ctx_new(k, cli.omega_alt)?;
            let tp = TrinomialParams::new(k, ell, m, u).map_err(|e| anyhow!("{e}"))?;
            match thm1_generate(&tp) {
                Thm1Outcome::Rejected { gcd } => {
                    if cli.table {
                        sink.line(&format!(
                            "rejected: gcd(d1 = {}, q^2-1 = {}) = {gcd}",
                            tp.d1,
                            tp.order()
                        ))?;
                    } else {
                        sink.emit_json(&serde_json::json!({"rejected": true, "gcd": gcd, "d1": tp.d1}))?;
                    }
                    Ok(1)
                }
                Thm1Outcome::Generated { poly, degenerate } => {
                    emit_poly(&mut sink, cli.table, &ctx, &poly, degenerate)?;
                    Ok(0)
                }
            }
        }
        Command::GenWydm { k, s, t, r } => {
            let ctx = ctx_new(k, cli.omega_alt)?;
            let p = WydmParams::new(k, s, t, r).map_err(|e| anyhow!("{e}"))?;
            let poly = wydm_generate(&ctx, &p);
            emit_poly(&mut sink, cli.table, &ctx, &poly, false)?;
            Ok(0)
        }
        Command::GenLh { k, n } => {
            let ctx = ctx_new(k, cli.omega_alt)?;
            let (params, poly) = lh_generate(&ctx, n).map_err(|e| anyhow!("{e}"))?;
            if cli.table {
                sink.line(&format!("r = {}, s = {}", params.r, params.s))?;
            }
            emit_poly(&mut sink, cli.table, &ctx, &poly, false)?;
            Ok(0)
        }
        Command::Verify { poly } => {
            let (ctx, f) = load_poly(&poly, cli.omega_alt)?;
            let f = f.reduce_mod_field(&ctx);
            let brute = brute_force_is_permutation(&ctx, &f).map_err(|e| anyhow!("{e}"))?;
            let criterion = factor_as_wrapped(&ctx, &f, None)
                .ok()
                .map(|w| criterion_lemma1(&ctx, &w));
            let agree = criterion.map_or(true, |c| c == brute);
            if cli.table {
                sink.line(&format!(
                    "brute force: {brute}; criterion: {}; agreement: {agree}",
                    criterion.map_or("not-wrappable".to_owned(), |c| c.to_string())
                ))?;
            } else {
                sink.emit_json(&serde_json::json!({
                    "permutation": brute,
                    "criterion": criterion,
                    "agreement": agree,
                }))?;
            }
            Ok(u64::from(!agree))
        }
        Command::Reduce { poly } => {
            let (ctx, f) = load_poly(&poly, cli.omega_alt)?;
            let w = factor_as_wrapped(&ctx, &f.reduce_mod_field(&ctx), None)
                .map_err(|e| anyhow!("{e}"))?;
            let g = rewrite_lemma2(&ctx, &w).map_err(|e| anyhow!("{e}"))?;
            if cli.table {
                sink.line(&format!("r = {}, s = {}", w.r, w.r % (ctx.q() + 1)))?;
            }
            sink.emit_json(&RatFuncJson::of(&ctx, &g))?;
            Ok(0)
        }
        Command::Equiv { left, right } => {
            let (ctx, f) = load_poly(&left, cli.omega_alt)?;
            let (ctx_g, g) = load_poly(&right, cli.omega_alt)?;
            if ctx.k() != ctx_g.k() {
                bail!("polynomials live over different fields");
            }
            match are_equivalent(&ctx, &f, &g).map_err(|e| anyhow!("{e}"))? {
                Some(w) => {
                    sink.emit_json(&WitnessJson::of(&w))?;
                    Ok(0)
                }
                None => {
                    sink.emit_json(&serde_json::json!({"witness": null}))?;
                    Ok(1)
                }
            }
        }
        Command::LemmaCheck { which, k_min, k_max } => {
            let mut failures = 0u64;
            match which.as_str() {
                "lemma3" => {
                    for k in k_min..=k_max {
                        let ctx = ctx_new(k, cli.omega_alt)?;
                        let ok = lemma3_holds(&ctx);
                        sink.emit_json(&serde_json::json!({"k": k, "holds": ok}))?;
                        failures += u64::from(!ok);
                    }
                }
                "lemma4" => {
                    for k in k_min..=k_max {
                        let ctx = ctx_new(k, cli.omega_alt)?;
                        for ell in 1..=5u32 {
                            for m in 1..=5u32 {
                                if ell == m {
                                    continue;
                                }
                                let ok = matches!(lemma4_check(&ctx, ell, m), Ok(true));
                                sink.emit_json(&serde_json::json!({
                                    "k": k, "ell": ell, "m": m, "holds": ok,
                                }))?;
                                failures += u64::from(!ok);
                            }
                        }
                    }
                }
                other => bail!("unknown lemma {other:?} (expected lemma3 or lemma4)"),
            }
            Ok(failures)
        }
        Command::SurveySec3 { k_min, k_max, u_max } => {
            let mut failures = 0u64;
            for k in k_min..=k_max.min(4) {
                let ctx = ctx_new(k, cli.omega_alt)?;
                let q = 1i64 << k;
                for ell in 1..=(2 * k + 1) {
                    for m in 1..=(2 * k + 1) {
                        if ell == m {
                            continue;
                        }
                        for u in 0..=u_max.unwrap_or(q) {
                            let tp = TrinomialParams::new(k, ell, m, u)
                                .map_err(|e| anyhow!("{e}"))?;
                            if !matches!(thm1_generate(&tp), Thm1Outcome::Generated { .. }) {
                                continue;
                            }
                            let lh = sec3_lh_match(&ctx, &tp).map_err(|e| anyhow!("{e}"))?;
                            failures += u64::from(!lh.verified);
                            sink.emit_json(&Sec3RecordJson::of(&lh))?;
                            if let Some(wy) =
                                sec3_wydm_match(&ctx, &tp).map_err(|e| anyhow!("{e}"))?
                            {
                                failures += u64::from(!wy.verified);
                                sink.emit_json(&Sec3RecordJson::of(&wy))?;
                            }
                        }
                    }
                }
            }
            Ok(failures)
        }
        Command::Sweep {
            k_min,
            k_max,
            ell_max,
            m_max,
            u_max,
            checks,
        } => {
            let config = SweepConfig {
                k_min,
                k_max,
                ell_max,
                m_max,
                u_max,
                checks: if checks.is_empty() {
                    ALL_CHECKS.to_vec()
                } else {
                    checks
                },
                omega_alt: cli.omega_alt,
            };
            let report = run_sweep(&config, &mut sink.out)?;
            if cli.table {
                sink.line(&format!(
                    "total {} accepted {} degenerate {} brute-force failures {} correspondence failures {} in {:?}",
                    report.total,
                    report.accepted,
                    report.degenerate,
                    report.brute_force_failures,
                    report.correspondence_failures,
                    report.elapsed
                ))?;
            } else {
                sink.emit_json(&report)?;
            }
            Ok(report.failures())
        }
    }
}

fn emit_poly(
    sink: &mut Sink,
    table: bool,
    ctx: &FieldCtx,
    poly: &SparsePoly,
    degenerate: bool,
) -> Result<()> {
    if table {
        let body: Vec<String> = poly
            .terms()
            .iter()
            .rev()
            .map(|&(e, c)| {
                if c == muperm::gf::Elt::ONE {
                    format!("X^{e}")
                } else {
                    format!("{:x}*X^{e}", c.bits())
                }
            })
            .collect();
        let tag = if degenerate { "  (degenerate)" } else { "" };
        sink.line(&format!("{}{}", body.join(" + "), tag))?;
    } else {
        let mut value = serde_json::to_value(PolyJson::of(ctx, poly))?;
        value["degenerate"] = serde_json::Value::Bool(degenerate);
        sink.emit_json(&value)?;
    }
    Ok(())
}
