//! JSON wire formats: field elements as lowercase hex (low-degree
//! coefficient in the least significant bit), sparse polynomials as
//! exponent/coefficient pairs with ascending exponents, plus the report
//! record shapes used by the CLI.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use muperm::equiv::{EquivWitness, Sec3Case, Sec3Record};
use muperm::gf::{Elt, FieldCtx};
use muperm::poly::{RatFunc, SparsePoly};

pub fn elt_to_hex(e: Elt) -> String {
    format!("{:x}", e.bits())
}

pub fn elt_from_hex(ctx: &FieldCtx, s: &str) -> Result<Elt> {
    let bits = u32::from_str_radix(s, 16).with_context(|| format!("bad coefficient hex {s:?}"))?;
    ctx.elt(bits)
        .map_err(|e| anyhow::anyhow!("coefficient out of range: {e}"))
}

/// `{"k": int, "modulus_bits": hex}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FieldJson {
    pub k: u32,
    pub modulus_bits: String,
}

impl FieldJson {
    pub fn of(ctx: &FieldCtx) -> FieldJson {
        FieldJson {
            k: ctx.k(),
            modulus_bits: format!("{:x}", ctx.modulus_bits()),
        }
    }
}

/// `{"k": int, "terms": [[exponent, "coeff_hex"], ...]}`, exponents ascending.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyJson {
    pub k: u32,
    pub terms: Vec<(u128, String)>,
}

impl PolyJson {
    pub fn of(ctx: &FieldCtx, p: &SparsePoly) -> PolyJson {
        PolyJson {
            k: ctx.k(),
            terms: p
                .terms()
                .iter()
                .map(|&(e, c)| (e, elt_to_hex(c)))
                .collect(),
        }
    }

    pub fn decode(&self, ctx: &FieldCtx) -> Result<SparsePoly> {
        if ctx.k() != self.k {
            bail!("polynomial is over k = {}, context has k = {}", self.k, ctx.k());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, hex) in &self.terms {
            terms.push((*e, elt_from_hex(ctx, hex)?));
        }
        Ok(SparsePoly::from_terms(terms))
    }
}

/// `{"num": ..., "den": ...}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl RatFuncJson {
    pub fn of(ctx: &FieldCtx, g: &RatFunc) -> RatFuncJson {
        RatFuncJson {
            num: PolyJson::of(ctx, g.num()),
            den: PolyJson::of(ctx, g.den()),
        }
    }
}

/// `{"alpha": hex, "beta": hex, "n": int}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct WitnessJson {
    pub alpha: String,
    pub beta: String,
    pub n: u64,
}

impl WitnessJson {
    pub fn of(w: &EquivWitness) -> WitnessJson {
        WitnessJson {
            alpha: elt_to_hex(w.alpha),
            beta: elt_to_hex(w.beta),
            n: w.n,
        }
    }

    pub fn decode(&self, ctx: &FieldCtx) -> Result<EquivWitness> {
        EquivWitness::new(
            ctx,
            elt_from_hex(ctx, &self.alpha)?,
            elt_from_hex(ctx, &self.beta)?,
            self.n,
        )
        .map_err(|e| anyhow::anyhow!("invalid witness: {e}"))
    }
}

/// `{"case": "lh"|"wydm-direct"|"wydm-reciprocal", "witness": {...},
/// "verified": bool, "lift_i": int}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct Sec3RecordJson {
    pub case: String,
    pub witness: WitnessJson,
    pub verified: bool,
    pub lift_i: u32,
}

impl Sec3RecordJson {
    pub fn of(rec: &Sec3Record) -> Sec3RecordJson {
        Sec3RecordJson {
            case: match rec.case {
                Sec3Case::Lh => "lh",
                Sec3Case::WydmDirect => "wydm-direct",
                Sec3Case::WydmReciprocal => "wydm-reciprocal",
            }
            .to_owned(),
            witness: WitnessJson::of(&rec.witness),
            verified: rec.verified,
            lift_i: rec.lift_i,
        }
    }
}

/// Trinomial-family parameters as they appear inside sweep detail lines.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ParamsJson {
    pub k: u32,
    pub ell: u32,
    pub m: u32,
    pub u: i64,
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
}

/// One sweep detail line:
/// `{"params": {...}, "poly": {...}, "accepted": bool, "degenerate": bool,
/// "brute_force_ok": bool}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SweepLineJson {
    pub params: ParamsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolyJson>,
    pub accepted: bool,
    pub degenerate: bool,
    pub brute_force_ok: bool,
}
