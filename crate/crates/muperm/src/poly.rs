//! Sparse polynomial and rational-function algebra over `F_{q^2}`,
//! coefficient Frobenius, Möbius maps and composition.
//!
//! Exponents are kept as `u128` and never reduced implicitly; reduction
//! modulo `X^{q^2} - X` is the explicit [`SparsePoly::reduce_mod_field`].
//! Dense arithmetic is used internally for gcd, expansion and composition;
//! the sparse form is the canonical external representation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldCtx};

/// Degree cap for dense expansion; anything larger is desk-scale abuse.
const DENSE_DEGREE_LIMIT: u128 = 1 << 16;

/// Cap on power-map exponents admitted into dense composition.
const COMPOSE_DEGREE_LIMIT: u128 = 1 << 12;

/// A polynomial stored as a strictly increasing list of
/// `(exponent, nonzero coefficient)` pairs. The empty list is zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparsePoly {
    terms: Vec<(u128, Elt)>,
}

impl SparsePoly {
    pub fn zero() -> SparsePoly {
        SparsePoly { terms: Vec::new() }
    }

    pub fn one() -> SparsePoly {
        SparsePoly::monomial(0, Elt::ONE)
    }

    pub fn monomial(exponent: u128, coeff: Elt) -> SparsePoly {
        if coeff.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: alloc::vec![(exponent, coeff)],
        }
    }

    /// `X^e`.
    pub fn x_pow(exponent: u128) -> SparsePoly {
        SparsePoly::monomial(exponent, Elt::ONE)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicate exponents
    /// by characteristic-2 addition and dropping zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (u128, Elt)>>(terms: I) -> SparsePoly {
        let mut v: Vec<(u128, Elt)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(u128, Elt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => {
                    // char-2 coefficient addition is a bitwise xor
                    last.1 = Elt(last.1 .0 ^ c.0);
                    if last.1.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((e, c)),
            }
        }
        SparsePoly { terms: out }
    }

    pub fn terms(&self) -> &[(u128, Elt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u128> {
        self.terms.last().map(|&(e, _)| e)
    }

    pub fn low_exponent(&self) -> Option<u128> {
        self.terms.first().map(|&(e, _)| e)
    }

    pub fn leading_coeff(&self) -> Option<Elt> {
        self.terms.last().map(|&(_, c)| c)
    }

    pub fn coeff_at(&self, exponent: u128) -> Elt {
        self.terms
            .binary_search_by_key(&exponent, |&(e, _)| e)
            .map(|i| self.terms[i].1)
            .unwrap_or(Elt::ZERO)
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        SparsePoly::from_terms(self.terms.iter().chain(other.terms.iter()).copied())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &SparsePoly) -> SparsePoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &other.terms {
                terms.push((e1 + e2, ctx.mul(c1, c2)));
            }
        }
        SparsePoly::from_terms(terms)
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Elt) -> SparsePoly {
        SparsePoly::from_terms(self.terms.iter().map(|&(e, a)| (e, ctx.mul(a, c))))
    }

    pub fn shift_exponents(&self, by: u128) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|&(e, c)| (e + by, c)).collect(),
        }
    }

    /// Evaluates at a point. At `x = 0` only an exponent-0 term contributes.
    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        let mut acc = Elt::ZERO;
        if x.is_zero() {
            return self.coeff_at(0);
        }
        let order = ctx.order() as u128;
        for &(e, c) in &self.terms {
            let p = ctx.powu(x, (e % order) as u64);
            acc = ctx.add(acc, ctx.mul(c, p));
        }
        acc
    }

    /// Reduction modulo `X^{q^2} - X`: positive exponents map to their
    /// representative in `[1, q^2-1]`, exponent 0 stays 0, colliding terms
    /// are added in `F_{q^2}`. The induced function on the field is
    /// unchanged.
    pub fn reduce_mod_field(&self, ctx: &FieldCtx) -> SparsePoly {
        let order = ctx.order() as u128;
        SparsePoly::from_terms(self.terms.iter().map(|&(e, c)| {
            let e = if e == 0 { 0 } else { (e - 1) % order + 1 };
            (e, c)
        }))
    }

    /// Applies the `q`-power Frobenius to every coefficient; an involution.
    pub fn coeff_frobenius(&self, ctx: &FieldCtx) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (e, ctx.frobenius_q(c)))
                .collect(),
        }
    }

    /// `X^{deg} * p(1/X)`: the coefficient-reversed polynomial.
    pub fn reversed(&self) -> SparsePoly {
        let Some(deg) = self.degree() else {
            return SparsePoly::zero();
        };
        SparsePoly::from_terms(self.terms.iter().map(|&(e, c)| (deg - e, c)))
    }
}

/// Dense coefficient vector, used internally for gcd and expansion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Dense {
    // c[i] is the coefficient of X^i; trailing zeros trimmed
    c: Vec<Elt>,
}

impl Dense {
    pub(crate) fn zero() -> Dense {
        Dense { c: Vec::new() }
    }

    pub(crate) fn one() -> Dense {
        Dense {
            c: alloc::vec![Elt::ONE],
        }
    }

    fn trim(mut self) -> Dense {
        while self.c.last().is_some_and(|c| c.is_zero()) {
            self.c.pop();
        }
        self
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub(crate) fn from_sparse(p: &SparsePoly) -> Result<Dense> {
        let Some(deg) = p.degree() else {
            return Ok(Dense::zero());
        };
        if deg > DENSE_DEGREE_LIMIT {
            return Err(Error::ResourceLimit("dense expansion degree"));
        }
        let mut c = alloc::vec![Elt::ZERO; deg as usize + 1];
        for &(e, coeff) in p.terms() {
            c[e as usize] = coeff;
        }
        Ok(Dense { c })
    }

    pub(crate) fn to_sparse(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.c
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, &c)| (e as u128, c)),
        )
    }

    pub(crate) fn add(&self, other: &Dense) -> Dense {
        let n = self.c.len().max(other.c.len());
        let mut c = alloc::vec![Elt::ZERO; n];
        for (i, &x) in self.c.iter().enumerate() {
            c[i] = x;
        }
        for (i, &x) in other.c.iter().enumerate() {
            c[i] = Elt(c[i].0 ^ x.0);
        }
        Dense { c }.trim()
    }

    pub(crate) fn mul(&self, ctx: &FieldCtx, other: &Dense) -> Dense {
        if self.is_zero() || other.is_zero() {
            return Dense::zero();
        }
        let mut c = alloc::vec![Elt::ZERO; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                let p = ctx.mul(a, b);
                c[i + j] = Elt(c[i + j].0 ^ p.0);
            }
        }
        Dense { c }.trim()
    }

    pub(crate) fn divrem(&self, ctx: &FieldCtx, den: &Dense) -> Result<(Dense, Dense)> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = den.degree().unwrap();
        let lead_inv = ctx.inv(den.c[dd])?;
        let mut rem = self.clone();
        let mut quo = alloc::vec![Elt::ZERO; self.c.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = ctx.mul(rem.c[rd], lead_inv);
            let shift = rd - dd;
            quo[shift] = f;
            for (j, &b) in den.c.iter().enumerate() {
                let p = ctx.mul(f, b);
                rem.c[shift + j] = Elt(rem.c[shift + j].0 ^ p.0);
            }
            rem = rem.trim();
        }
        Ok((Dense { c: quo }.trim(), rem))
    }

    pub(crate) fn gcd(&self, ctx: &FieldCtx, other: &Dense) -> Result<Dense> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(ctx, &b)?;
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    pub(crate) fn monic(&self, ctx: &FieldCtx) -> Result<Dense> {
        let Some(d) = self.degree() else {
            return Ok(Dense::zero());
        };
        let inv = ctx.inv(self.c[d])?;
        Ok(Dense {
            c: self.c.iter().map(|&x| ctx.mul(x, inv)).collect(),
        })
    }

    pub(crate) fn scale(&self, ctx: &FieldCtx, s: Elt) -> Dense {
        Dense {
            c: self.c.iter().map(|&x| ctx.mul(x, s)).collect(),
        }
        .trim()
    }

    pub(crate) fn pow(&self, ctx: &FieldCtx, mut e: u128, cap: u128) -> Result<Dense> {
        if let Some(d) = self.degree() {
            if (d as u128) * e > cap {
                return Err(Error::ResourceLimit("dense power degree"));
            }
        }
        let mut acc = Dense::one();
        let mut base = self.clone();
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            e >>= 1;
            if e != 0 {
                base = base.mul(ctx, &base);
            }
        }
        Ok(acc)
    }
}

/// Monic gcd of two sparse polynomials (Euclidean algorithm in dense form).
pub fn poly_gcd(ctx: &FieldCtx, a: &SparsePoly, b: &SparsePoly) -> Result<SparsePoly> {
    let da = Dense::from_sparse(a)?;
    let db = Dense::from_sparse(b)?;
    Ok(da.gcd(ctx, &db)?.to_sparse())
}

/// A point of the projective line: a field element or infinity.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ProjValue {
    Finite(Elt),
    Infinity,
}

impl ProjValue {
    pub fn finite(self) -> Option<Elt> {
        match self {
            ProjValue::Finite(x) => Some(x),
            ProjValue::Infinity => None,
        }
    }
}

/// A degree-one rational map `X -> (aX + b)/(cX + d)` with `ad + bc != 0`
/// (characteristic 2), acting on the projective line.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct MobiusMap {
    pub a: Elt,
    pub b: Elt,
    pub c: Elt,
    pub d: Elt,
}

impl MobiusMap {
    pub fn new(ctx: &FieldCtx, a: Elt, b: Elt, c: Elt, d: Elt) -> Result<MobiusMap> {
        let det = ctx.add(ctx.mul(a, d), ctx.mul(b, c));
        if det.is_zero() {
            return Err(Error::ParamOutOfRange("Mobius map determinant is zero"));
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> MobiusMap {
        MobiusMap {
            a: Elt::ONE,
            b: Elt::ZERO,
            c: Elt::ZERO,
            d: Elt::ONE,
        }
    }

    /// `rho(X) = (X + omega)/(omega X + 1)` for the context's omega.
    pub fn rho(ctx: &FieldCtx) -> MobiusMap {
        MobiusMap {
            a: Elt::ONE,
            b: ctx.omega(),
            c: ctx.omega(),
            d: Elt::ONE,
        }
    }

    pub fn det(&self, ctx: &FieldCtx) -> Elt {
        ctx.add(ctx.mul(self.a, self.d), ctx.mul(self.b, self.c))
    }

    /// Projective evaluation; the pole maps to infinity and infinity maps to
    /// `a/c` (or infinity when `c = 0`).
    pub fn apply(&self, ctx: &FieldCtx, v: ProjValue) -> ProjValue {
        match v {
            ProjValue::Infinity => {
                if self.c.is_zero() {
                    ProjValue::Infinity
                } else {
                    ProjValue::Finite(ctx.div(self.a, self.c).unwrap())
                }
            }
            ProjValue::Finite(x) => {
                let num = ctx.add(ctx.mul(self.a, x), self.b);
                let den = ctx.add(ctx.mul(self.c, x), self.d);
                if den.is_zero() {
                    ProjValue::Infinity
                } else {
                    ProjValue::Finite(ctx.div(num, den).unwrap())
                }
            }
        }
    }

    /// Matrix product: `self` after `inner`.
    pub fn compose(&self, ctx: &FieldCtx, inner: &MobiusMap) -> MobiusMap {
        let mul = |x, y| ctx.mul(x, y);
        let add = |x, y| ctx.add(x, y);
        MobiusMap {
            a: add(mul(self.a, inner.a), mul(self.b, inner.c)),
            b: add(mul(self.a, inner.b), mul(self.b, inner.d)),
            c: add(mul(self.c, inner.a), mul(self.d, inner.c)),
            d: add(mul(self.c, inner.b), mul(self.d, inner.d)),
        }
    }

    /// Projective equality: the matrices differ by a nonzero scalar.
    pub fn proj_eq(&self, ctx: &FieldCtx, other: &MobiusMap) -> bool {
        // cross-ratios of all entry pairs must vanish
        let pairs = [
            (self.a, other.b, self.b, other.a),
            (self.a, other.c, self.c, other.a),
            (self.a, other.d, self.d, other.a),
            (self.b, other.c, self.c, other.b),
            (self.b, other.d, self.d, other.b),
            (self.c, other.d, self.d, other.c),
        ];
        pairs
            .iter()
            .all(|&(p, q, r, s)| ctx.add(ctx.mul(p, q), ctx.mul(r, s)).is_zero())
    }

    pub fn to_ratfunc(&self, ctx: &FieldCtx) -> RatFunc {
        let num = SparsePoly::from_terms([(1u128, self.a), (0, self.b)]);
        let den = SparsePoly::from_terms([(1u128, self.c), (0, self.d)]);
        RatFunc::new(ctx, num, den).expect("valid Mobius map has nonzero denominator")
    }
}

/// A rational function in normalized form: `gcd(num, den) = 1` and the
/// denominator is monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: SparsePoly,
    den: SparsePoly,
}

impl RatFunc {
    pub fn new(ctx: &FieldCtx, num: SparsePoly, den: SparsePoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: SparsePoly::zero(),
                den: SparsePoly::one(),
            });
        }
        let dn = Dense::from_sparse(&num)?;
        let dd = Dense::from_sparse(&den)?;
        let g = dn.gcd(ctx, &dd)?;
        let (qn, rn) = dn.divrem(ctx, &g)?;
        let (qd, rd) = dd.divrem(ctx, &g)?;
        debug_assert!(rn.is_zero() && rd.is_zero());
        let lead_inv = ctx.inv(qd.c[qd.degree().unwrap()])?;
        Ok(RatFunc {
            num: qn.scale(ctx, lead_inv).to_sparse(),
            den: qd.scale(ctx, lead_inv).to_sparse(),
        })
    }

    pub fn from_poly(ctx: &FieldCtx, p: SparsePoly) -> Result<RatFunc> {
        RatFunc::new(ctx, p, SparsePoly::one())
    }

    pub fn identity() -> RatFunc {
        RatFunc {
            num: SparsePoly::x_pow(1),
            den: SparsePoly::one(),
        }
    }

    /// The power map `X^n`; negative `n` becomes `1/X^{|n|}`.
    pub fn power_map(n: i128) -> RatFunc {
        if n >= 0 {
            RatFunc {
                num: SparsePoly::x_pow(n as u128),
                den: SparsePoly::one(),
            }
        } else {
            RatFunc {
                num: SparsePoly::one(),
                den: SparsePoly::x_pow(n.unsigned_abs()),
            }
        }
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den(&self) -> &SparsePoly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// `1/r`. Errors on the zero function.
    pub fn reciprocal(&self, ctx: &FieldCtx) -> Result<RatFunc> {
        RatFunc::new(ctx, self.den.clone(), self.num.clone())
    }

    /// Projective evaluation. At finite points `0/0` cannot occur after
    /// normalization; at infinity the leading-coefficient/degree rule is
    /// used.
    pub fn eval(&self, ctx: &FieldCtx, v: ProjValue) -> ProjValue {
        match v {
            ProjValue::Finite(x) => {
                let n = self.num.eval(ctx, x);
                let d = self.den.eval(ctx, x);
                if d.is_zero() {
                    ProjValue::Infinity
                } else {
                    ProjValue::Finite(ctx.div(n, d).unwrap())
                }
            }
            ProjValue::Infinity => {
                if self.num.is_zero() {
                    return ProjValue::Finite(Elt::ZERO);
                }
                let dn = self.num.degree().unwrap();
                let dd = self.den.degree().unwrap();
                if dn > dd {
                    ProjValue::Infinity
                } else if dn < dd {
                    ProjValue::Finite(Elt::ZERO)
                } else {
                    let ln = self.num.leading_coeff().unwrap();
                    let ld = self.den.leading_coeff().unwrap();
                    ProjValue::Finite(ctx.div(ln, ld).unwrap())
                }
            }
        }
    }

    /// Normalized composition `outer(inner)`.
    pub fn compose(ctx: &FieldCtx, outer: &RatFunc, inner: &RatFunc) -> Result<RatFunc> {
        if inner.is_constant() {
            // outer must be defined at the constant value
            let c = inner.eval(ctx, ProjValue::Finite(Elt::ZERO));
            return match outer.eval(ctx, c) {
                ProjValue::Finite(v) => RatFunc::new(
                    ctx,
                    SparsePoly::monomial(0, v),
                    SparsePoly::one(),
                ),
                ProjValue::Infinity => Err(Error::DegenerateComposition),
            };
        }
        let top = outer
            .num
            .degree()
            .unwrap_or(0)
            .max(outer.den.degree().unwrap_or(0));
        if top > COMPOSE_DEGREE_LIMIT {
            return Err(Error::ResourceLimit("composition outer degree"));
        }
        let p = Dense::from_sparse(&inner.num)?;
        let q = Dense::from_sparse(&inner.den)?;
        let expand = |poly: &SparsePoly| -> Result<Dense> {
            let mut acc = Dense::zero();
            for &(e, c) in poly.terms() {
                let t = p
                    .pow(ctx, e, DENSE_DEGREE_LIMIT)?
                    .mul(ctx, &q.pow(ctx, top - e, DENSE_DEGREE_LIMIT)?)
                    .scale(ctx, c);
                acc = acc.add(&t);
            }
            Ok(acc)
        };
        let num = expand(&outer.num)?;
        let den = expand(&outer.den)?;
        if den.is_zero() {
            return Err(Error::DegenerateComposition);
        }
        RatFunc::new(ctx, num.to_sparse(), den.to_sparse())
    }

    /// True iff `num1 * den2 = num2 * den1` as polynomials over `F_{q^2}`.
    pub fn equal(&self, ctx: &FieldCtx, other: &RatFunc) -> Result<bool> {
        let a = Dense::from_sparse(&self.num)?.mul(ctx, &Dense::from_sparse(&other.den)?);
        let b = Dense::from_sparse(&other.num)?.mul(ctx, &Dense::from_sparse(&self.den)?);
        Ok(a == b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::EnumWhich;

    fn f16() -> FieldCtx {
        FieldCtx::new(2).unwrap()
    }

    #[test]
    fn eval_zero_poly() {
        let ctx = f16();
        for x in ctx.enumerate(EnumWhich::FullField) {
            assert_eq!(SparsePoly::zero().eval(&ctx, x), Elt::ZERO);
        }
    }

    #[test]
    fn eval_trinomial_at_one() {
        let ctx = f16();
        let f = SparsePoly::from_terms([(8u128, Elt::ONE), (11, Elt::ONE), (14, Elt::ONE)]);
        assert_eq!(f.eval(&ctx, Elt::ONE), Elt::ONE);
    }

    #[test]
    fn eval_trinomial_term_by_term_oracle() {
        let ctx = f16();
        let f = SparsePoly::from_terms([(8u128, Elt::ONE), (11, Elt::ONE), (14, Elt::ONE)]);
        let g = ctx.generator();
        let expect = ctx.add(
            ctx.add(ctx.powu(g, 8), ctx.powu(g, 11)),
            ctx.powu(g, 14),
        );
        assert_eq!(f.eval(&ctx, g), expect);
    }

    #[test]
    fn reduce_examples() {
        let ctx = f16();
        assert_eq!(
            SparsePoly::x_pow(16).reduce_mod_field(&ctx),
            SparsePoly::x_pow(1)
        );
        assert_eq!(
            SparsePoly::x_pow(29).reduce_mod_field(&ctx),
            SparsePoly::x_pow(14)
        );
        // X^15 keeps the representative q^2-1, not 0
        assert_eq!(
            SparsePoly::x_pow(15).reduce_mod_field(&ctx),
            SparsePoly::x_pow(15)
        );
        let cancel = SparsePoly::from_terms([(5u128, Elt::ONE)])
            .add(&SparsePoly::from_terms([(5u128, Elt::ONE)]));
        assert!(cancel.reduce_mod_field(&ctx).is_zero());
        // colliding exponents after reduction cancel too
        let p = SparsePoly::from_terms([(5u128, Elt::ONE), (20, Elt::ONE)]);
        assert!(p.reduce_mod_field(&ctx).is_zero());
    }

    #[test]
    fn coeff_frobenius_examples() {
        let ctx = f16();
        let a = SparsePoly::from_terms([(0u128, Elt::ONE), (4, Elt::ONE), (6, Elt::ONE)]);
        assert_eq!(a.coeff_frobenius(&ctx), a);
        let w = ctx.omega();
        let wa = SparsePoly::monomial(1, w);
        // omega has order 3, which divides q - 1 = 3, so omega^q = omega
        assert_eq!(wa.coeff_frobenius(&ctx), wa);
        let b = SparsePoly::monomial(2, ctx.generator());
        assert_eq!(b.coeff_frobenius(&ctx).coeff_frobenius(&ctx), b);
    }

    #[test]
    fn rho_fixed_points_and_involution() {
        let ctx = f16();
        let rho = MobiusMap::rho(&ctx);
        let w = ctx.omega();
        assert_eq!(rho.det(&ctx), w);
        assert_eq!(
            rho.apply(&ctx, ProjValue::Finite(Elt::ONE)),
            ProjValue::Finite(Elt::ONE)
        );
        assert_eq!(
            rho.apply(&ctx, ProjValue::Finite(w)),
            ProjValue::Finite(Elt::ZERO)
        );
        // rho(inf) = 1/omega = omega^2
        assert_eq!(
            rho.apply(&ctx, ProjValue::Infinity),
            ProjValue::Finite(ctx.mul(w, w))
        );
        // pole 1/omega goes to infinity
        let pole = ctx.inv(w).unwrap();
        assert_eq!(rho.apply(&ctx, ProjValue::Finite(pole)), ProjValue::Infinity);
        // rho composed with itself is projectively the identity
        let sq = rho.compose(&ctx, &rho);
        assert!(sq.proj_eq(&ctx, &MobiusMap::identity()));
    }

    #[test]
    fn mobius_identity_fixes_everything() {
        let ctx = f16();
        let id = MobiusMap::identity();
        assert_eq!(id.apply(&ctx, ProjValue::Infinity), ProjValue::Infinity);
        for x in ctx.enumerate(EnumWhich::FullField) {
            assert_eq!(id.apply(&ctx, ProjValue::Finite(x)), ProjValue::Finite(x));
        }
    }

    #[test]
    fn ratfunc_normalization() {
        let ctx = f16();
        // (X^2+1)/(X+1) = X+1 in characteristic 2
        let r = RatFunc::new(
            &ctx,
            SparsePoly::from_terms([(2u128, Elt::ONE), (0, Elt::ONE)]),
            SparsePoly::from_terms([(1u128, Elt::ONE), (0, Elt::ONE)]),
        )
        .unwrap();
        let lin = RatFunc::new(
            &ctx,
            SparsePoly::from_terms([(1u128, Elt::ONE), (0, Elt::ONE)]),
            SparsePoly::one(),
        )
        .unwrap();
        assert_eq!(r, lin);
        assert!(r.equal(&ctx, &lin).unwrap());
    }

    #[test]
    fn ratfunc_eval_cases() {
        let ctx = f16();
        let one = RatFunc::from_poly(&ctx, SparsePoly::one()).unwrap();
        for x in ctx.enumerate(EnumWhich::FullField) {
            assert_eq!(
                one.eval(&ctx, ProjValue::Finite(x)),
                ProjValue::Finite(Elt::ONE)
            );
        }
        assert_eq!(one.eval(&ctx, ProjValue::Infinity), ProjValue::Finite(Elt::ONE));
        let inv = RatFunc::power_map(-1);
        assert_eq!(
            inv.eval(&ctx, ProjValue::Finite(Elt::ZERO)),
            ProjValue::Infinity
        );
        assert_eq!(
            inv.eval(&ctx, ProjValue::Infinity),
            ProjValue::Finite(Elt::ZERO)
        );
    }

    #[test]
    fn compose_cases() {
        let ctx = f16();
        let id = RatFunc::identity();
        let rho = MobiusMap::rho(&ctx).to_ratfunc(&ctx);
        assert!(RatFunc::compose(&ctx, &id, &rho)
            .unwrap()
            .equal(&ctx, &rho)
            .unwrap());
        assert!(RatFunc::compose(&ctx, &rho, &rho)
            .unwrap()
            .equal(&ctx, &id)
            .unwrap());
        let x2 = RatFunc::power_map(2);
        let x3 = RatFunc::power_map(3);
        assert!(RatFunc::compose(&ctx, &x2, &x3)
            .unwrap()
            .equal(&ctx, &RatFunc::power_map(6))
            .unwrap());
        // negative outer power
        let xm2 = RatFunc::power_map(-2);
        assert!(RatFunc::compose(&ctx, &xm2, &x3)
            .unwrap()
            .equal(&ctx, &RatFunc::power_map(-6))
            .unwrap());
    }

    #[test]
    fn degenerate_composition_errors() {
        let ctx = f16();
        // outer 1/X at constant inner 0
        let inv = RatFunc::power_map(-1);
        let zero = RatFunc::from_poly(&ctx, SparsePoly::zero()).unwrap();
        assert_eq!(
            RatFunc::compose(&ctx, &inv, &zero),
            Err(Error::DegenerateComposition)
        );
    }

    #[test]
    fn gcd_examples() {
        let ctx = f16();
        let p = SparsePoly::from_terms([(3u128, ctx.generator()), (1, ctx.generator())]);
        let monic_p = {
            let d = Dense::from_sparse(&p).unwrap().monic(&ctx).unwrap();
            d.to_sparse()
        };
        assert_eq!(poly_gcd(&ctx, &p, &SparsePoly::zero()).unwrap(), monic_p);
        let a = SparsePoly::from_terms([(2u128, Elt::ONE), (0, Elt::ONE)]);
        let b = SparsePoly::from_terms([(1u128, Elt::ONE), (0, Elt::ONE)]);
        assert_eq!(poly_gcd(&ctx, &a, &b).unwrap(), b);
        assert_eq!(
            poly_gcd(&ctx, &SparsePoly::zero(), &SparsePoly::zero()),
            Err(Error::ZeroGcd)
        );
    }

    #[test]
    fn reversed_poly() {
        let a = SparsePoly::from_terms([(0u128, Elt::ONE), (4, Elt::ONE), (6, Elt::ONE)]);
        let rev = SparsePoly::from_terms([(6u128, Elt::ONE), (2, Elt::ONE), (0, Elt::ONE)]);
        assert_eq!(a.reversed(), rev);
    }
}
