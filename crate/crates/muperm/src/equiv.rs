//! Multiplicative equivalence of polynomials over `F_{q^2}`: witness
//! application, pruned search, and the explicit correspondences with the two
//! earlier trinomial families.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::framework::{lh_generate, wydm_generate, TrinomialParams, WydmParams};
use crate::gf::{Elt, FieldCtx};
use crate::ints::{canon_pos, gcd_u64, modinv_u64};
use crate::poly::SparsePoly;

/// A witness `(alpha, beta, n)` of the relation
/// `f ≡ alpha · g(beta · X^n)  (mod X^{q^2} - X)`
/// with `alpha, beta` nonzero and `gcd(n, q^2 - 1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    pub alpha: Elt,
    pub beta: Elt,
    pub n: u64,
}

impl EquivWitness {
    pub fn new(ctx: &FieldCtx, alpha: Elt, beta: Elt, n: u64) -> Result<EquivWitness> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::ParamOutOfRange("witness scalars must be nonzero"));
        }
        if n == 0 || gcd_u64(n % ctx.order(), ctx.order()) != 1 {
            return Err(Error::ZeroGcd);
        }
        Ok(EquivWitness { alpha, beta, n })
    }

    pub fn identity() -> EquivWitness {
        EquivWitness {
            alpha: Elt::ONE,
            beta: Elt::ONE,
            n: 1,
        }
    }

    /// The witness realizing `self` applied first, then `other`:
    /// if `f1 = alpha1 g(beta1 X^{n1})` and `f2 = alpha2 f1(beta2 X^{n2})`,
    /// then `f2 = (alpha1 alpha2) g((beta1 beta2^{n1}) X^{n1 n2})`.
    pub fn compose(&self, ctx: &FieldCtx, other: &EquivWitness) -> Result<EquivWitness> {
        let order = ctx.order();
        let n = (self.n % order) as u128 * (other.n % order) as u128 % order as u128;
        EquivWitness::new(
            ctx,
            ctx.mul(self.alpha, other.alpha),
            ctx.mul(self.beta, ctx.powu(other.beta, self.n)),
            canon_pos(n as i128, order),
        )
    }

    /// The inverse witness: if `f = alpha g(beta X^n)` then
    /// `g = alpha^{-1} f(beta^{-n'} X^{n'})` with `n n' ≡ 1 (mod q^2 - 1)`.
    pub fn invert(&self, ctx: &FieldCtx) -> Result<EquivWitness> {
        let order = ctx.order();
        let n_inv = modinv_u64(self.n % order, order).ok_or(Error::ZeroGcd)?;
        let n_inv = if n_inv == 0 { order } else { n_inv };
        let beta_inv = ctx.inv(self.beta)?;
        EquivWitness::new(
            ctx,
            ctx.inv(self.alpha)?,
            ctx.powu(beta_inv, n_inv),
            n_inv,
        )
    }
}

/// Computes `alpha · g(beta · X^n) mod X^{q^2} - X`: each term `c X^e`
/// becomes `alpha c beta^e X^{n e}`, then the result is reduced.
pub fn apply_witness(ctx: &FieldCtx, g: &SparsePoly, w: &EquivWitness) -> SparsePoly {
    let scaled: Vec<(u128, Elt)> = g
        .terms()
        .iter()
        .map(|&(e, c)| {
            let coeff = ctx.mul(w.alpha, ctx.mul(c, ctx.powu(w.beta, (e % ctx.order() as u128) as u64)));
            (e * w.n as u128, coeff)
        })
        .collect();
    SparsePoly::from_terms(scaled).reduce_mod_field(ctx)
}

fn mapped_support(ctx: &FieldCtx, g: &SparsePoly, n: u64) -> Vec<u128> {
    let order = ctx.order();
    let mut v: Vec<u128> = g
        .terms()
        .iter()
        .map(|&(e, _)| {
            if e == 0 {
                0
            } else {
                canon_pos((e % order as u128) as i128 * n as i128, order) as u128
            }
        })
        .collect();
    v.sort_unstable();
    v
}

/// Searches for a witness linking the reduced polynomials `f` and `g`.
///
/// The exponent action of each candidate `n` must map `g`'s support multiset
/// onto `f`'s (pruning); surviving candidates are completed by scanning
/// `beta` over ascending generator powers with `alpha` solved from the first
/// matched term. Deterministic: the first `(n, beta)` in that order wins.
/// Fields larger than `F_{2^8}` are refused; supply a candidate `n` via
/// [`are_equivalent_with_n`] instead.
pub fn are_equivalent(
    ctx: &FieldCtx,
    f: &SparsePoly,
    g: &SparsePoly,
) -> Result<Option<EquivWitness>> {
    if ctx.k() > 4 {
        return Err(Error::ResourceLimit("witness search limited to k <= 4"));
    }
    let f = f.reduce_mod_field(ctx);
    let g = g.reduce_mod_field(ctx);
    if f.is_zero() || g.is_zero() {
        return Ok(if f.is_zero() && g.is_zero() {
            Some(EquivWitness::identity())
        } else {
            None
        });
    }
    if f.terms().len() != g.terms().len() {
        return Ok(None);
    }
    let mut f_support: Vec<u128> = f.terms().iter().map(|&(e, _)| e).collect();
    f_support.sort_unstable();
    for n in 1..ctx.order() {
        if gcd_u64(n, ctx.order()) != 1 {
            continue;
        }
        if mapped_support(ctx, &g, n) != f_support {
            continue;
        }
        if let Some(w) = complete_witness(ctx, &f, &g, n) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Witness search with the exponent unit `n` supplied by the caller.
pub fn are_equivalent_with_n(
    ctx: &FieldCtx,
    f: &SparsePoly,
    g: &SparsePoly,
    n: u64,
) -> Result<Option<EquivWitness>> {
    if n == 0 || gcd_u64(n % ctx.order(), ctx.order()) != 1 {
        return Err(Error::ZeroGcd);
    }
    let f = f.reduce_mod_field(ctx);
    let g = g.reduce_mod_field(ctx);
    Ok(complete_witness(ctx, &f, &g, n))
}

fn complete_witness(ctx: &FieldCtx, f: &SparsePoly, g: &SparsePoly, n: u64) -> Option<EquivWitness> {
    let (e0, c0) = *g.terms().first()?;
    let gen = ctx.generator();
    let mut beta = Elt::ONE;
    for _ in 0..ctx.order() {
        // alpha is forced by g's first term
        let e0_img = if e0 == 0 {
            0
        } else {
            canon_pos((e0 % ctx.order() as u128) as i128 * n as i128, ctx.order()) as u128
        };
        let target = f.coeff_at(e0_img);
        if !target.is_zero() {
            let denom = ctx.mul(c0, ctx.powu(beta, (e0 % ctx.order() as u128) as u64));
            if let Ok(alpha) = ctx.div(target, denom) {
                let w = EquivWitness {
                    alpha,
                    beta,
                    n,
                };
                if apply_witness(ctx, g, &w) == *f {
                    return Some(w);
                }
            }
        }
        beta = ctx.mul(beta, gen);
    }
    None
}

/// Which correspondence a verification record reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sec3Case {
    /// Direct congruence with the `(S+T, T)`-family member.
    WydmDirect,
    /// Match after the reciprocal substitution `X -> X^{q^2-2}`.
    WydmReciprocal,
    /// Match with the `X + X^{1+r(q-1)} + X^{1+s(q-1)}`-family member
    /// through `g(X^v)`, `v = d1`.
    Lh,
}

/// Outcome of an explicit correspondence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sec3Record {
    pub case: Sec3Case,
    pub witness: EquivWitness,
    pub verified: bool,
    /// The exponent-lift count used by the [`Sec3Case::Lh`] case; 0 otherwise.
    pub lift_i: u32,
}

/// Matches a trinomial-family instance against the older
/// `X^r (X^{(S+T)(q-1)} + X^{T(q-1)} + 1)` family. Applicable only for mixed
/// parity of `(ell, m)`:
///
/// * `ell` odd, `m` even — `(s, t, r) := (ell, m, d2)` and the polynomials
///   agree directly after reduction;
/// * `ell` even, `m` odd — `(s, t) := (m, ell)` with `r ≡ -d3 (mod q^2-1)`,
///   and agreement holds after the substitution `X -> X^{q^2-2}`.
///
/// Returns `None` when both parities coincide.
pub fn sec3_wydm_match(ctx: &FieldCtx, tp: &TrinomialParams) -> Result<Option<Sec3Record>> {
    if tp.ell % 2 == tp.m % 2 {
        return Ok(None);
    }
    let f = SparsePoly::from_terms([
        (tp.d1 as u128, Elt::ONE),
        (tp.d2 as u128, Elt::ONE),
        (tp.d3 as u128, Elt::ONE),
    ])
    .reduce_mod_field(ctx);
    let order = ctx.order();
    let (case, params) = if tp.ell % 2 == 1 {
        (
            Sec3Case::WydmDirect,
            WydmParams::new(tp.k, tp.ell, tp.m, tp.d2)?,
        )
    } else {
        let r = canon_pos(-(tp.d3 as i128), order);
        (
            Sec3Case::WydmReciprocal,
            WydmParams::new(tp.k, tp.m, tp.ell, r)?,
        )
    };
    let g = wydm_generate(ctx, &params);
    let witness = match case {
        Sec3Case::WydmDirect => EquivWitness::identity(),
        _ => EquivWitness::new(ctx, Elt::ONE, Elt::ONE, ctx.size() - 2)?,
    };
    let verified = apply_witness(ctx, &g, &witness) == f;
    Ok(Some(Sec3Record {
        case,
        witness,
        verified,
        lift_i: 0,
    }))
}

/// `2^e mod m` by repeated doubling.
fn pow2_mod(e: u32, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    for _ in 0..e {
        acc = acc * 2 % m;
    }
    acc
}

/// Matches a trinomial-family instance against the
/// `X + X^{1+r(q-1)} + X^{1+s(q-1)}` family through `g(X^v)` with `v = d1`.
///
/// `ell` is first lifted to `ell + 2ki` (which fixes all exponents mod
/// `q^2-1`) with the minimal `i >= 0` making `2^ell > 2^m`; then
/// `n := ell - m` determines the family member. The record carries both the
/// intermediate exponent congruences and the final polynomial identity.
pub fn sec3_lh_match(ctx: &FieldCtx, tp: &TrinomialParams) -> Result<Sec3Record> {
    let order = ctx.order();
    let v = tp.d1;
    if gcd_u64(v, order) != 1 {
        return Err(Error::ZeroGcd);
    }
    let mut ell = tp.ell;
    let mut lift_i = 0u32;
    while ell <= tp.m {
        ell += 2 * ctx.k();
        lift_i += 1;
    }
    let n = ell - tp.m;
    let (lh, g) = lh_generate(ctx, n)?;
    let qm1 = (ctx.q() - 1) as u128;
    let big_q_mod = pow2_mod(ell, order);
    let big_r_mod = pow2_mod(tp.m, order);
    let ord = order as u128;
    let rv = (lh.r as u128 * v as u128 % ord) * qm1 % ord;
    let sv = (lh.s as u128 * v as u128 % ord) * qm1 % ord;
    let want_rv = big_q_mod as u128 * qm1 % ord;
    let want_sv = (ord - big_r_mod as u128 % ord) * qm1 % ord;
    let congruences_ok = rv == want_rv && sv == want_sv;
    let f = SparsePoly::from_terms([
        (tp.d1 as u128, Elt::ONE),
        (tp.d2 as u128, Elt::ONE),
        (tp.d3 as u128, Elt::ONE),
    ])
    .reduce_mod_field(ctx);
    let witness = EquivWitness::new(ctx, Elt::ONE, Elt::ONE, v)?;
    let verified = congruences_ok && apply_witness(ctx, &g, &witness) == f;
    Ok(Sec3Record {
        case: Sec3Case::Lh,
        witness,
        verified,
        lift_i,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::brute_force_is_permutation;

    fn f16() -> FieldCtx {
        FieldCtx::new(2).unwrap()
    }

    #[test]
    fn identity_witness_is_noop() {
        let ctx = f16();
        let g = SparsePoly::from_terms([(1u128, Elt::ONE), (13, Elt::ONE), (7, Elt::ONE)]);
        assert_eq!(apply_witness(&ctx, &g, &EquivWitness::identity()), g);
    }

    #[test]
    fn reciprocal_witness_inverts_exponents() {
        let ctx = f16();
        // n = q^2 - 2 = 14 ≡ -1 mod 15
        let w = EquivWitness::new(&ctx, Elt::ONE, Elt::ONE, 14).unwrap();
        let g = SparsePoly::from_terms([(4u128, Elt::ONE), (13, Elt::ONE), (1, Elt::ONE)]);
        let out = apply_witness(&ctx, &g, &w);
        assert_eq!(
            out,
            SparsePoly::from_terms([(11u128, Elt::ONE), (2, Elt::ONE), (14, Elt::ONE)])
        );
        // oracle: pointwise x -> g(x^14) on nonzero elements
        for x in ctx.enumerate(crate::gf::EnumWhich::FullField) {
            if !x.is_zero() {
                assert_eq!(out.eval(&ctx, x), g.eval(&ctx, ctx.powu(x, 14)));
            }
        }
    }

    #[test]
    fn witness_term_count_never_grows() {
        let ctx = f16();
        let g = SparsePoly::from_terms([(1u128, Elt::ONE), (4, Elt::ONE), (7, Elt::ONE)]);
        for n in [1u64, 2, 4, 7, 8, 11, 13, 14] {
            let w = EquivWitness::new(&ctx, ctx.generator(), ctx.omega(), n).unwrap();
            assert!(apply_witness(&ctx, &g, &w).terms().len() <= g.terms().len());
        }
    }

    #[test]
    fn witness_validation() {
        let ctx = f16();
        assert!(EquivWitness::new(&ctx, Elt::ZERO, Elt::ONE, 1).is_err());
        assert!(EquivWitness::new(&ctx, Elt::ONE, Elt::ZERO, 1).is_err());
        assert!(EquivWitness::new(&ctx, Elt::ONE, Elt::ONE, 3).is_err()); // gcd(3,15)=3
        assert!(EquivWitness::new(&ctx, Elt::ONE, Elt::ONE, 2).is_ok());
    }

    #[test]
    fn compose_and_invert() {
        let ctx = f16();
        let g = SparsePoly::from_terms([(2u128, ctx.generator()), (8, Elt::ONE), (0, ctx.omega())]);
        let w1 = EquivWitness::new(&ctx, ctx.omega(), ctx.generator(), 2).unwrap();
        let w2 = EquivWitness::new(&ctx, ctx.generator(), ctx.omega(), 7).unwrap();
        // composition law
        let via_steps = apply_witness(&ctx, &apply_witness(&ctx, &g, &w1), &w2);
        let via_composed = apply_witness(&ctx, &g, &w1.compose(&ctx, &w2).unwrap());
        assert_eq!(via_steps, via_composed);
        // inversion law
        let f = apply_witness(&ctx, &g, &w1);
        let back = apply_witness(&ctx, &f, &w1.invert(&ctx).unwrap());
        assert_eq!(back, g.reduce_mod_field(&ctx));
    }

    #[test]
    fn reflexivity() {
        let ctx = f16();
        let f = SparsePoly::from_terms([(8u128, Elt::ONE), (11, Elt::ONE), (14, Elt::ONE)]);
        let w = are_equivalent(&ctx, &f, &f).unwrap().unwrap();
        assert_eq!(apply_witness(&ctx, &f, &w), f);
    }

    #[test]
    fn lh_pair_equivalent() {
        let ctx = f16();
        let f = SparsePoly::from_terms([(8u128, Elt::ONE), (11, Elt::ONE), (14, Elt::ONE)]);
        let g = SparsePoly::from_terms([(1u128, Elt::ONE), (13, Elt::ONE), (7, Elt::ONE)]);
        let w = are_equivalent(&ctx, &f, &g).unwrap().unwrap();
        assert_eq!(apply_witness(&ctx, &g, &w), f);
        // the known witness works too, and the search returns a minimal n
        let known = EquivWitness::new(&ctx, Elt::ONE, Elt::ONE, 8).unwrap();
        assert_eq!(apply_witness(&ctx, &g, &known), f);
        assert!(w.n <= 8);
    }

    #[test]
    fn different_support_sizes_never_match() {
        let ctx = f16();
        let f = SparsePoly::x_pow(1);
        let g = SparsePoly::from_terms([(1u128, Elt::ONE), (2, Elt::ONE)]);
        assert_eq!(are_equivalent(&ctx, &f, &g).unwrap(), None);
        assert_eq!(are_equivalent(&ctx, &g, &f).unwrap(), None);
    }

    #[test]
    fn witnessed_pairs_share_permutation_status() {
        let ctx = f16();
        let f = SparsePoly::from_terms([(8u128, Elt::ONE), (11, Elt::ONE), (14, Elt::ONE)]);
        let g = SparsePoly::from_terms([(1u128, Elt::ONE), (13, Elt::ONE), (7, Elt::ONE)]);
        assert!(are_equivalent(&ctx, &f, &g).unwrap().is_some());
        assert_eq!(
            brute_force_is_permutation(&ctx, &f).unwrap(),
            brute_force_is_permutation(&ctx, &g).unwrap()
        );
    }

    #[test]
    fn search_refused_on_large_fields() {
        let ctx = FieldCtx::new(5).unwrap();
        let f = SparsePoly::x_pow(1);
        assert!(are_equivalent(&ctx, &f, &f).is_err());
        // but a supplied n still works
        let w = are_equivalent_with_n(&ctx, &f, &f, 1).unwrap().unwrap();
        assert_eq!(w, EquivWitness::identity());
    }

    #[test]
    fn wydm_direct_case() {
        let ctx = f16();
        let tp = TrinomialParams::new(2, 1, 2, 2).unwrap();
        let rec = sec3_wydm_match(&ctx, &tp).unwrap().unwrap();
        assert_eq!(rec.case, Sec3Case::WydmDirect);
        assert!(rec.verified);
        assert_eq!(rec.witness, EquivWitness::identity());
    }

    #[test]
    fn wydm_reciprocal_case() {
        let ctx = f16();
        // (ell, m) = (2, 1), u = 0: d = (2, 11, 14), reciprocal r = -14 ≡ 1
        let tp = TrinomialParams::new(2, 2, 1, 0).unwrap();
        assert_eq!((tp.d1, tp.d2, tp.d3), (2, 11, 14));
        let rec = sec3_wydm_match(&ctx, &tp).unwrap().unwrap();
        assert_eq!(rec.case, Sec3Case::WydmReciprocal);
        assert!(rec.verified);
        assert_eq!(rec.witness.n, 14);
    }

    #[test]
    fn wydm_not_applicable_on_equal_parity() {
        let ctx = f16();
        let tp = TrinomialParams::new(2, 1, 3, 1).unwrap();
        assert_eq!(sec3_wydm_match(&ctx, &tp).unwrap(), None);
    }

    #[test]
    fn lh_match_example() {
        let ctx = f16();
        let tp = TrinomialParams::new(2, 1, 2, 2).unwrap();
        let rec = sec3_lh_match(&ctx, &tp).unwrap();
        assert!(rec.verified);
        assert_eq!(rec.lift_i, 1); // ell 1 -> 5
        assert_eq!(rec.witness.n, 8); // v = d1
    }

    #[test]
    fn lh_match_rejects_bad_gcd() {
        let ctx = f16();
        // u = 1 gives d1 = 3, gcd(3, 15) = 3
        let tp = TrinomialParams::new(2, 1, 2, 1).unwrap();
        assert_eq!(sec3_lh_match(&ctx, &tp), Err(Error::ZeroGcd));
    }

    #[test]
    fn lh_match_sweep_small() {
        // every accepted instance matches, over several parameter combinations
        for k in 1..=3 {
            let ctx = FieldCtx::new(k).unwrap();
            let q = 1u64 << k;
            for ell in 1..=(2 * k) {
                for m in 1..=(2 * k) {
                    if ell == m {
                        continue;
                    }
                    for u in 0..=q as i64 {
                        let tp = TrinomialParams::new(k, ell, m, u).unwrap();
                        if gcd_u64(tp.d1, tp.order()) != 1 {
                            continue;
                        }
                        let rec = sec3_lh_match(&ctx, &tp).unwrap();
                        assert!(rec.verified, "k={k} ell={ell} m={m} u={u}");
                        if tp.ell % 2 != tp.m % 2 {
                            let wrec = sec3_wydm_match(&ctx, &tp).unwrap().unwrap();
                            assert!(wrec.verified, "wydm k={k} ell={ell} m={m} u={u}");
                        }
                    }
                }
            }
        }
    }
}
