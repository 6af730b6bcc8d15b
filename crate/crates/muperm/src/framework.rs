//! The core machinery: the wrapped-form permutation criterion, the quotient
//! rewrite, the Möbius-composition identity, the trinomial family
//! `X^{d1} + X^{d2} + X^{d3}`, the construction factory, and the two older
//! trinomial generators it connects to.

use alloc::vec::Vec;

use crate::circle::{is_perm_on, maps_bijectively, proj_line, unit_circle, EvalSet};
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldCtx};
use crate::ints::{canon_pos, gcd_u64, modinv_u64};
use crate::poly::{MobiusMap, RatFunc, SparsePoly};

/// Parameters `(k, ell, m, u)` of the trinomial family, with the derived
/// quantities `q = 2^k`, `Q = 2^ell`, `R = 2^m` and the canonical exponents
/// `d1, d2, d3` in `[1, q^2-1]`:
///
/// ```text
/// d1 ≡ Q - R + u(q+1)            (mod q^2 - 1)
/// d2 ≡ Q + R + (u - R)(q+1)      (mod q^2 - 1)
/// d3 ≡ -(Q + R) + (u + Q)(q+1)   (mod q^2 - 1)
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrinomialParams {
    pub k: u32,
    pub ell: u32,
    pub m: u32,
    pub u: i64,
    pub q: u64,
    pub big_q: u128,
    pub big_r: u128,
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
}

impl TrinomialParams {
    pub fn new(k: u32, ell: u32, m: u32, u: i64) -> Result<TrinomialParams> {
        if k < 1 || k > crate::gf::MAX_K {
            return Err(Error::ParamOutOfRange("k must be in [1, 12]"));
        }
        if ell == m || ell == 0 || m == 0 {
            return Err(Error::ParamOutOfRange("need positive ell != m"));
        }
        if ell > 100 || m > 100 {
            return Err(Error::ParamOutOfRange("ell, m too large"));
        }
        let q = 1u64 << k;
        let order = q * q - 1;
        let big_q: u128 = 1 << ell;
        let big_r: u128 = 1 << m;
        let qm = (big_q % order as u128) as i128;
        let rm = (big_r % order as u128) as i128;
        let qp1 = (q + 1) as i128;
        let u_ = u as i128;
        let d1 = canon_pos(qm - rm + u_ * qp1, order);
        let d2 = canon_pos(qm + rm + (u_ - rm) * qp1, order);
        let d3 = canon_pos(-(qm + rm) + (u_ + qm) * qp1, order);
        Ok(TrinomialParams {
            k,
            ell,
            m,
            u,
            q,
            big_q,
            big_r,
            d1,
            d2,
            d3,
        })
    }

    pub fn order(&self) -> u64 {
        self.q * self.q - 1
    }
}

/// The three canonical exponents.
pub fn thm1_exponents(p: &TrinomialParams) -> (u64, u64, u64) {
    (p.d1, p.d2, p.d3)
}

/// Outcome of generating a trinomial-family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Thm1Outcome {
    /// `gcd(d1, q^2-1) != 1`; the family's hypothesis fails.
    Rejected { gcd: u64 },
    /// The polynomial, with coinciding exponents merged; `degenerate` is set
    /// when fewer than three terms survive.
    Generated { poly: SparsePoly, degenerate: bool },
}

pub fn thm1_generate(p: &TrinomialParams) -> Thm1Outcome {
    let g = gcd_u64(p.d1, p.order());
    if g != 1 {
        return Thm1Outcome::Rejected { gcd: g };
    }
    let poly = SparsePoly::from_terms([
        (p.d1 as u128, Elt::ONE),
        (p.d2 as u128, Elt::ONE),
        (p.d3 as u128, Elt::ONE),
    ]);
    let degenerate = poly.terms().len() < 3;
    Thm1Outcome::Generated { poly, degenerate }
}

/// The shape `X^r A(X^{q-1})`, whose behavior on `F_{q^2}` reduces to the
/// map `x -> x^r A(x)^{q-1}` on `mu_{q+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrappedForm {
    pub r: u64,
    pub a: SparsePoly,
}

impl WrappedForm {
    /// `X^r A(X^{q-1})`, reduced.
    pub fn reconstruct(&self, ctx: &FieldCtx) -> SparsePoly {
        let qm1 = (ctx.q() - 1) as u128;
        SparsePoly::from_terms(
            self.a
                .terms()
                .iter()
                .map(|&(e, c)| (self.r as u128 + e * qm1, c)),
        )
        .reduce_mod_field(ctx)
    }
}

/// Writes `f = X^r A(X^{q-1})`, anchoring `r` at the term of index `anchor`
/// (default: the minimal exponent). Exponent differences are taken mod
/// `q^2 - 1`, so any anchor yields a form reproducing the same function.
pub fn factor_as_wrapped(
    ctx: &FieldCtx,
    f: &SparsePoly,
    anchor: Option<usize>,
) -> Result<WrappedForm> {
    if f.is_zero() {
        return Err(Error::NotWrappable);
    }
    if f.coeff_at(0) != Elt::ZERO {
        return Err(Error::NotWrappable);
    }
    let order = ctx.order() as u128;
    let qm1 = (ctx.q() - 1) as u128;
    let terms = f.terms();
    let idx = anchor.unwrap_or(0);
    if idx >= terms.len() {
        return Err(Error::ParamOutOfRange("anchor index out of range"));
    }
    let r = terms[idx].0;
    if r > u64::MAX as u128 {
        return Err(Error::ResourceLimit("anchor exponent"));
    }
    let mut a_terms = Vec::with_capacity(terms.len());
    for &(e, c) in terms {
        let diff = (e + order - r % order) % order;
        if diff % qm1 != 0 {
            return Err(Error::NotWrappable);
        }
        a_terms.push((diff / qm1, c));
    }
    Ok(WrappedForm {
        r: r as u64,
        a: SparsePoly::from_terms(a_terms),
    })
}

/// The permutation criterion: `X^r A(X^{q-1})` permutes `F_{q^2}` iff
/// `gcd(r, q-1) = 1` and `x -> x^r A(x)^{q-1}` permutes `mu_{q+1}`.
/// A zero of `A` on the circle maps to 0 and therefore fails.
pub fn criterion_lemma1(ctx: &FieldCtx, w: &WrappedForm) -> bool {
    if gcd_u64(w.r, ctx.q() - 1) != 1 {
        return false;
    }
    let circle = unit_circle(ctx);
    let mut seen = alloc::vec![false; ctx.size() as usize];
    for &x in circle.elements() {
        let av = w.a.eval(ctx, x);
        if av.is_zero() {
            return false;
        }
        let y = ctx.mul(ctx.powu(x, w.r), ctx.powu(av, ctx.q() - 1));
        if seen[y.bits() as usize] {
            return false;
        }
        seen[y.bits() as usize] = true;
    }
    true
}

/// True iff `A` has no zero on `mu_{q+1}` (direct evaluation).
pub fn no_roots_on_circle(ctx: &FieldCtx, a: &SparsePoly) -> bool {
    unit_circle(ctx)
        .elements()
        .iter()
        .all(|&x| !a.eval(ctx, x).is_zero())
}

/// Rewrites the circle map of a wrapped form as the rational function
/// `g(X) = X^s A^{(q)}(1/X) / A(X)` with `s = r mod (q+1)` lifted to
/// `[0, q]`; `g` agrees with `x -> x^r A(x)^{q-1}` pointwise on `mu_{q+1}`.
pub fn rewrite_lemma2(ctx: &FieldCtx, w: &WrappedForm) -> Result<RatFunc> {
    if !no_roots_on_circle(ctx, &w.a) {
        return Err(Error::RewriteInvalid);
    }
    let s = (w.r % (ctx.q() + 1)) as u128;
    let deg = w.a.degree().unwrap_or(0);
    // clear negative exponents: multiply numerator and denominator by X^deg
    let num = w.a.coeff_frobenius(ctx).reversed().shift_exponents(s);
    let den = w.a.shift_exponents(deg);
    RatFunc::new(ctx, num, den)
}

/// Checks the composition identity
/// `X^{(-1)^m} ∘ (X^{Q+R}+X^Q+1)/(X^{Q+R}+X^R+1) = rho ∘ X^{R∓Q} ∘ rho`
/// (minus when `ell ≡ m (mod 2)`, plus otherwise) as an exact equality of
/// rational functions over the context's field.
pub fn lemma4_check(ctx: &FieldCtx, ell: u32, m: u32) -> Result<bool> {
    if ell == m || ell == 0 || m == 0 {
        return Err(Error::ParamOutOfRange("need positive ell != m"));
    }
    if ell > 16 || m > 16 {
        return Err(Error::ResourceLimit("lemma4 exponents"));
    }
    let big_q: u128 = 1 << ell;
    let big_r: u128 = 1 << m;
    let quotient = RatFunc::new(
        ctx,
        SparsePoly::from_terms([
            (big_q + big_r, Elt::ONE),
            (big_q, Elt::ONE),
            (0, Elt::ONE),
        ]),
        SparsePoly::from_terms([
            (big_q + big_r, Elt::ONE),
            (big_r, Elt::ONE),
            (0, Elt::ONE),
        ]),
    )?;
    let lhs = if m % 2 == 0 {
        quotient
    } else {
        quotient.reciprocal(ctx)?
    };
    let inner_exp: i128 = if ell % 2 == m % 2 {
        big_r as i128 - big_q as i128
    } else {
        big_r as i128 + big_q as i128
    };
    let rho = MobiusMap::rho(ctx).to_ratfunc(ctx);
    let rhs = RatFunc::compose(
        ctx,
        &rho,
        &RatFunc::compose(ctx, &RatFunc::power_map(inner_exp), &rho)?,
    )?;
    lhs.equal(ctx, &rhs)
}

/// Minimal positive `r ≡ s (mod q+1)` with `gcd(r, q-1) = 1`, searched over
/// the window `j in [0, q-2]`. For even `q` one always exists because
/// `gcd(q+1, q-1) = 1`.
pub fn select_exponent(s: i128, q: u64) -> Result<u64> {
    let qp1 = q + 1;
    let base = (s - 1).rem_euclid(qp1 as i128) as u64 + 1;
    for j in 0..=q.saturating_sub(2) {
        let r = base + j * qp1;
        if gcd_u64(r, q - 1) == 1 {
            return Ok(r);
        }
    }
    Err(Error::ExistenceViolation)
}

/// Expresses a circle-permuting rational function as
/// `X^s A^{(q)}(1/X)/A(X)` with `A := den(g)`, absorbing a `mu_{q+1}`
/// scalar into `A` when needed. Returns `(s, A)` with `s in [0, q]` and `A`
/// root-free on the circle.
pub fn express_quotient_form(ctx: &FieldCtx, g: &RatFunc) -> Result<(u64, SparsePoly)> {
    let a = g.den().clone();
    let deg = a.degree().unwrap_or(0);
    let rev = a.coeff_frobenius(ctx).reversed();
    let num = g.num();
    if num.is_zero() || num.terms().len() != rev.terms().len() {
        return Err(Error::NotExpressible("numerator shape mismatch"));
    }
    let shift = num.low_exponent().unwrap();
    let rev_low = rev.low_exponent().unwrap();
    if shift < rev_low {
        return Err(Error::NotExpressible("numerator shape mismatch"));
    }
    let e = shift - rev_low;
    // solve lambda from the first pair, then verify every term
    let lambda = ctx.div(num.terms()[0].1, rev.terms()[0].1).unwrap();
    for (&(en, cn), &(er, cr)) in num.terms().iter().zip(rev.terms().iter()) {
        if en != er + e || cn != ctx.mul(lambda, cr) {
            return Err(Error::NotExpressible("numerator is not a monomial multiple"));
        }
    }
    let s_exact = e + deg;
    let s = (s_exact % (ctx.q() + 1) as u128) as u64;
    let a = if lambda == Elt::ONE {
        a
    } else {
        if ctx.powu(lambda, ctx.q() + 1) != Elt::ONE {
            return Err(Error::NotExpressible("scalar not on the unit circle"));
        }
        // find c with c^(q-1) = lambda by discrete search
        let gen = ctx.generator();
        let mut c = Elt::ONE;
        let mut found = None;
        for _ in 0..ctx.order() {
            if ctx.powu(c, ctx.q() - 1) == lambda {
                found = Some(c);
                break;
            }
            c = ctx.mul(c, gen);
        }
        let c = found.ok_or(Error::NotExpressible("no (q-1)-th root of scalar"))?;
        a.scale(ctx, c)
    };
    if !no_roots_on_circle(ctx, &a) {
        return Err(Error::NotExpressible("denominator has a root on the circle"));
    }
    Ok((s, a))
}

/// Output of the construction factory.
#[derive(Clone, Debug)]
pub struct FactoryOutput {
    pub f: SparsePoly,
    pub wrapped: WrappedForm,
}

/// The construction factory: composes `g = post ∘ h ∘ pre` where `pre` maps
/// `mu_{q+1}` bijectively onto the domain of `h` (either `mu_{q+1}` or
/// `P^1(F_q)`), `h` permutes that set, and `post` maps it back onto
/// `mu_{q+1}`. The resulting circle permutation is expressed in quotient
/// form and lifted to a permutation polynomial `X^r A(X^{q-1})` of
/// `F_{q^2}`.
pub fn factory_remark(
    ctx: &FieldCtx,
    h: &RatFunc,
    pre: &MobiusMap,
    post: &MobiusMap,
) -> Result<FactoryOutput> {
    let mu = EvalSet::Circle(unit_circle(ctx));
    let line = EvalSet::Line(proj_line(ctx));
    let domain = if maps_bijectively(ctx, pre, &mu, &mu) {
        mu.clone()
    } else if maps_bijectively(ctx, pre, &mu, &line) {
        line
    } else {
        return Err(Error::InvalidFactoryInput("pre map is not a bijection from the circle"));
    };
    if !is_perm_on(ctx, h, &domain) {
        return Err(Error::InvalidFactoryInput("h does not permute the domain set"));
    }
    if !maps_bijectively(ctx, post, &domain, &mu) {
        return Err(Error::InvalidFactoryInput("post map does not return to the circle"));
    }
    let g = RatFunc::compose(
        ctx,
        &post.to_ratfunc(ctx),
        &RatFunc::compose(ctx, h, &pre.to_ratfunc(ctx))?,
    )?;
    let (s, a) = express_quotient_form(ctx, &g)?;
    let r = select_exponent(s as i128, ctx.q())?;
    let wrapped = WrappedForm { r, a };
    let f = wrapped.reconstruct(ctx);
    Ok(FactoryOutput { f, wrapped })
}

/// Parameters of the earlier trinomial family
/// `X^r (X^{(S+T)(q-1)} + X^{T(q-1)} + 1)` with `s` odd, `t` even and
/// `r ≡ S + T (mod q+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WydmParams {
    pub k: u32,
    pub s: u32,
    pub t: u32,
    pub r: u64,
    pub big_s: u128,
    pub big_t: u128,
}

impl WydmParams {
    pub fn new(k: u32, s: u32, t: u32, r: u64) -> Result<WydmParams> {
        if k < 1 || k > crate::gf::MAX_K {
            return Err(Error::ParamOutOfRange("k must be in [1, 12]"));
        }
        if s == 0 || s % 2 == 0 {
            return Err(Error::ParamOutOfRange("s must be odd and positive"));
        }
        if t == 0 || t % 2 == 1 {
            return Err(Error::ParamOutOfRange("t must be even and positive"));
        }
        if s > 100 || t > 100 || r == 0 {
            return Err(Error::ParamOutOfRange("s, t too large or r not positive"));
        }
        let q = 1u64 << k;
        let big_s: u128 = 1 << s;
        let big_t: u128 = 1 << t;
        let qp1 = (q + 1) as u128;
        if (r as u128) % qp1 != (big_s + big_t) % qp1 {
            return Err(Error::ParamOutOfRange("need r ≡ S + T (mod q+1)"));
        }
        Ok(WydmParams {
            k,
            s,
            t,
            r,
            big_s,
            big_t,
        })
    }
}

/// `X^r (X^{(S+T)(q-1)} + X^{T(q-1)} + 1)`, reduced. Permutes `F_{q^2}` iff
/// `gcd(r, q-1) = 1`.
pub fn wydm_generate(ctx: &FieldCtx, p: &WydmParams) -> SparsePoly {
    let qm1 = (ctx.q() - 1) as u128;
    let r = p.r as u128;
    SparsePoly::from_terms([
        (r + (p.big_s + p.big_t) * qm1, Elt::ONE),
        (r + p.big_t * qm1, Elt::ONE),
        (r, Elt::ONE),
    ])
    .reduce_mod_field(ctx)
}

/// Parameters of the trinomial family `X + X^{1+r(q-1)} + X^{1+s(q-1)}`
/// with `T = 2^n`, `r(T-1) ≡ T` and `s(T-1) ≡ -1 (mod q+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LhParams {
    pub k: u32,
    pub n: u32,
    pub big_t: u128,
    pub r: u64,
    pub s: u64,
}

/// Solves the defining congruences by modular inversion and returns the
/// reduced trinomial. Errors when `gcd(T-1, q+1) != 1`.
pub fn lh_generate(ctx: &FieldCtx, n: u32) -> Result<(LhParams, SparsePoly)> {
    if n == 0 || n > 100 {
        return Err(Error::ParamOutOfRange("n must be positive and small"));
    }
    let q = ctx.q();
    let qp1 = q + 1;
    let big_t: u128 = 1 << n;
    let t_mod = (big_t % qp1 as u128) as u64;
    let tm1 = (t_mod + qp1 - 1) % qp1;
    let inv = modinv_u64(tm1, qp1).ok_or(Error::ParamOutOfRange("gcd(T-1, q+1) != 1"))?;
    let lift = |x: u64| if x == 0 { qp1 } else { x };
    let r = lift((t_mod * inv) % qp1);
    let s = lift((qp1 - inv % qp1) % qp1);
    let qm1 = (q - 1) as u128;
    let poly = SparsePoly::from_terms([
        (1u128, Elt::ONE),
        (1 + r as u128 * qm1, Elt::ONE),
        (1 + s as u128 * qm1, Elt::ONE),
    ])
    .reduce_mod_field(ctx);
    Ok((
        LhParams {
            k: ctx.k(),
            n,
            big_t,
            r,
            s,
        },
        poly,
    ))
}

/// Replays the proof-level facts for a trinomial-family instance:
/// the exponent congruences, the root-freeness of the proof's
/// `A = 1 + X^R + X^{Q+R}` when `gcd(Q-R, q+1) = 1`, and the cancellation
/// identity `A(x) + x^{Q+R} A(x)^q = x^R + x^Q` on the whole circle.
pub fn thm1_proof_checks(ctx: &FieldCtx, p: &TrinomialParams) -> bool {
    let order = p.order() as u128;
    let qm1 = (p.q - 1) as u128;
    let d1 = p.d1 as u128;
    let d2 = p.d2 as u128;
    let d3 = p.d3 as u128;
    let qm = p.big_q % order;
    let rm = p.big_r % order;
    if d1 % order != (d2 + rm * qm1) % order {
        return false;
    }
    if d3 % order != (d2 + (qm + rm) * qm1) % order {
        return false;
    }
    if d1 % qm1 != d2 % qm1 || d2 % qm1 != d3 % qm1 {
        return false;
    }
    let a = SparsePoly::from_terms([
        (0u128, Elt::ONE),
        (p.big_r, Elt::ONE),
        (p.big_q + p.big_r, Elt::ONE),
    ]);
    if a.eval(ctx, Elt::ONE) != Elt::ONE {
        return false;
    }
    let qr_gcd = gcd_u64(
        ((p.big_q as i128 - p.big_r as i128).rem_euclid(order as i128)) as u64,
        p.q + 1,
    );
    if qr_gcd == 1 && !no_roots_on_circle(ctx, &a) {
        return false;
    }
    let qr = ((p.big_q + p.big_r) % order) as u64;
    for &x in unit_circle(ctx).elements() {
        let av = a.eval(ctx, x);
        let lhs = ctx.add(av, ctx.mul(ctx.powu(x, qr), ctx.frobenius_q(av)));
        let rhs = ctx.add(
            ctx.powu(x, (rm % order) as u64),
            ctx.powu(x, (qm % order) as u64),
        );
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Brute-force permutation test: evaluates `f` at every field element and
/// checks the image for repeats.
pub fn brute_force_is_permutation(ctx: &FieldCtx, f: &SparsePoly) -> Result<bool> {
    if ctx.size() > 1 << 24 {
        return Err(Error::ResourceLimit("field too large for brute force"));
    }
    let size = ctx.size() as usize;
    let mut seen = alloc::vec![false; size];
    for bits in 0..size as u32 {
        let y = f.eval(ctx, Elt(bits));
        if seen[y.bits() as usize] {
            return Ok(false);
        }
        seen[y.bits() as usize] = true;
    }
    Ok(true)
}
