//! Arithmetic in `F_{2^{2k}}` with its distinguished subfield `F_q`, `q = 2^k`.
//!
//! The field is realised as a single extension `F_2[x]/(p)` where `p` is the
//! lexicographically smallest *primitive* polynomial of degree `2k`, derived
//! at construction time by exhaustive primitivity testing. The residue class
//! of `x` is therefore a generator `g` of the multiplicative group, and the
//! subfield `F_q` is carved out by the predicate `x^q = x`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported extension parameter; the field is `F_{2^{2k}}`, so this
/// caps the field at `2^24` elements.
pub const MAX_K: u32 = 12;

/// Log/antilog tables are built when the extension degree `2k` is at most
/// this; larger fields use shift-reduce multiplication.
const TABLE_DEG_LIMIT: u32 = 16;

/// An element of `F_{2^{2k}}`: coefficients of the residue polynomial, low
/// degree first, packed into the low `2k` bits.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Elt(pub(crate) u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Carry-less multiply of two `F_2[x]` polynomials followed by reduction
/// modulo `modulus` (degree `n`). Inputs must have degree `< n`, `n <= 24`.
fn clmul_reduce(a: u32, b: u32, modulus: u32, n: u32) -> u32 {
    let mut acc: u64 = 0;
    let a = a as u64;
    let mut b = b as u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    let m = modulus as u64;
    let mut d = 2 * n;
    while d >= n {
        if (acc >> d) & 1 == 1 {
            acc ^= m << (d - n);
        }
        if d == 0 {
            break;
        }
        d -= 1;
    }
    acc as u32
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^e mod modulus` in `F_2[x]/(modulus)`, square-and-multiply.
fn powmod_raw(base: u32, mut e: u64, modulus: u32, n: u32) -> u32 {
    let mut acc: u32 = 1;
    let mut b = base;
    while e != 0 {
        if e & 1 == 1 {
            acc = clmul_reduce(acc, b, modulus, n);
        }
        b = clmul_reduce(b, b, modulus, n);
        e >>= 1;
    }
    acc
}

/// True iff the residue class of `x` modulo `modulus` has multiplicative
/// order exactly `2^n - 1`. Since the quotient ring has `2^n` elements, this
/// forces the ring to be a field, so the test covers irreducibility too.
fn is_primitive(modulus: u32, n: u32) -> bool {
    if modulus & 1 == 0 {
        return false;
    }
    let group = (1u64 << n) - 1;
    if powmod_raw(2, group, modulus, n) != 1 {
        return false;
    }
    for p in prime_factors(group) {
        if powmod_raw(2, group / p, modulus, n) == 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest primitive polynomial of degree `n` over `F_2`,
/// found by scanning bit patterns upward.
fn smallest_primitive_modulus(n: u32) -> u32 {
    let lo = 1u32 << n;
    let hi = 1u32 << (n + 1);
    let mut cand = lo + 1;
    while cand < hi {
        if is_primitive(cand, n) {
            return cand;
        }
        cand += 2;
    }
    unreachable!("a primitive polynomial of every degree exists");
}

/// Which set [`FieldCtx::enumerate`] should produce.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EnumWhich {
    FullField,
    Subfield,
}

/// The ambient field `F_{2^{2k}}` together with its subfield `F_q`, the
/// generator `g` (residue class of `x`) and the canonical order-3 element
/// `omega = g^((q^2-1)/3)`.
///
/// Immutable after construction; all operations are pure.
pub struct FieldCtx {
    k: u32,
    q: u64,
    order: u64,
    modulus: u32,
    omega: Elt,
    // log[bits] = discrete log base g; exp holds 2*order entries so that
    // log sums index without a reduction.
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl FieldCtx {
    /// Builds the context for `F_{2^{2k}}`, `1 <= k <= 12`.
    pub fn new(k: u32) -> Result<FieldCtx> {
        Self::build(k, false)
    }

    /// Same field, but with `omega` set to the other order-3 element `omega^2`.
    pub fn new_alt_omega(k: u32) -> Result<FieldCtx> {
        Self::build(k, true)
    }

    fn build(k: u32, alt_omega: bool) -> Result<FieldCtx> {
        if k < 1 || k > MAX_K {
            return Err(Error::ParamOutOfRange("k must be in [1, 12]"));
        }
        let n = 2 * k;
        let q = 1u64 << k;
        let order = q * q - 1;
        let modulus = smallest_primitive_modulus(n);

        let (log, exp) = if n <= TABLE_DEG_LIMIT {
            let mut log = alloc::vec![0u32; 1usize << n];
            let mut exp = alloc::vec![0u32; 2 * order as usize];
            let mut x: u32 = 1;
            for i in 0..order as usize {
                exp[i] = x;
                exp[i + order as usize] = x;
                log[x as usize] = i as u32;
                x = clmul_reduce(x, 2, modulus, n);
            }
            debug_assert_eq!(x, 1);
            (log, exp)
        } else {
            (Vec::new(), Vec::new())
        };

        let mut ctx = FieldCtx {
            k,
            q,
            order,
            modulus,
            omega: Elt::ZERO,
            log,
            exp,
        };
        let omega = ctx.powu(ctx.generator(), order / 3);
        ctx.omega = if alt_omega { ctx.mul(omega, omega) } else { omega };
        Ok(ctx)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `q = 2^k`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^2 - 1`, the order of the multiplicative group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of field elements, `q^2`.
    pub fn size(&self) -> u64 {
        self.q * self.q
    }

    /// The modulus bit pattern, including the leading degree-`2k` bit.
    pub fn modulus_bits(&self) -> u32 {
        self.modulus
    }

    /// The multiplicative generator `g` (residue class of `x`).
    pub fn generator(&self) -> Elt {
        Elt(2)
    }

    /// The prescribed order-3 element.
    pub fn omega(&self) -> Elt {
        self.omega
    }

    /// Validates a bit pattern as a field element.
    pub fn elt(&self, bits: u32) -> Result<Elt> {
        if bits >> (2 * self.k) != 0 {
            return Err(Error::ParamOutOfRange("element bits exceed field degree"));
        }
        Ok(Elt(bits))
    }

    pub fn add(&self, x: Elt, y: Elt) -> Elt {
        Elt(x.0 ^ y.0)
    }

    pub fn mul(&self, x: Elt, y: Elt) -> Elt {
        if x.is_zero() || y.is_zero() {
            return Elt::ZERO;
        }
        if !self.log.is_empty() {
            let i = self.log[x.0 as usize] as usize + self.log[y.0 as usize] as usize;
            Elt(self.exp[i])
        } else {
            Elt(clmul_reduce(x.0, y.0, self.modulus, 2 * self.k))
        }
    }

    /// Shift-reduce multiplication, bypassing the log tables. Exposed so the
    /// two strategies can be cross-checked against each other.
    pub fn mul_shift_reduce(&self, x: Elt, y: Elt) -> Elt {
        Elt(clmul_reduce(x.0, y.0, self.modulus, 2 * self.k))
    }

    pub fn inv(&self, x: Elt) -> Result<Elt> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.log.is_empty() {
            let i = (self.order as usize - self.log[x.0 as usize] as usize) % self.order as usize;
            Ok(Elt(self.exp[i]))
        } else {
            Ok(self.powu(x, self.order - 1))
        }
    }

    pub fn div(&self, x: Elt, y: Elt) -> Result<Elt> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e` for a non-negative exponent; for nonzero `x` the exponent is
    /// reduced mod `q^2 - 1`.
    pub fn powu(&self, x: Elt, e: u64) -> Elt {
        if x.is_zero() {
            return if e == 0 { Elt::ONE } else { Elt::ZERO };
        }
        let e = e % self.order;
        if !self.log.is_empty() {
            let i = (self.log[x.0 as usize] as u64 * e) % self.order;
            return Elt(self.exp[i as usize]);
        }
        let mut acc = Elt::ONE;
        let mut b = x;
        let mut e = e;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `x^e` with a possibly negative exponent; negative exponents require a
    /// nonzero base.
    pub fn pow(&self, x: Elt, e: i128) -> Result<Elt> {
        if x.is_zero() {
            return match e {
                0 => Ok(Elt::ONE),
                e if e > 0 => Ok(Elt::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let e = e.rem_euclid(self.order as i128) as u64;
        Ok(self.powu(x, e))
    }

    /// The `q`-power Frobenius `x -> x^q`; an involution on `F_{q^2}`.
    pub fn frobenius_q(&self, x: Elt) -> Elt {
        self.powu(x, self.q)
    }

    /// True iff `x` lies in the subfield `F_q`, i.e. `x^q = x`.
    pub fn in_subfield(&self, x: Elt) -> bool {
        self.frobenius_q(x) == x
    }

    /// Deterministic enumeration: zero first, then ascending powers of the
    /// relevant generator (`g` for the full field, `g^(q+1)` for `F_q`).
    pub fn enumerate(&self, which: EnumWhich) -> Vec<Elt> {
        match which {
            EnumWhich::FullField => {
                let mut out = Vec::with_capacity(self.size() as usize);
                out.push(Elt::ZERO);
                let mut x = Elt::ONE;
                for _ in 0..self.order {
                    out.push(x);
                    x = self.mul(x, self.generator());
                }
                out
            }
            EnumWhich::Subfield => {
                let mut out = Vec::with_capacity(self.q as usize);
                out.push(Elt::ZERO);
                let h = self.powu(self.generator(), self.q + 1);
                let mut x = Elt::ONE;
                for _ in 0..self.q - 1 {
                    out.push(x);
                    x = self.mul(x, h);
                }
                out
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn elt_order(&self, x: Elt) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order;
        for p in prime_factors(self.order) {
            while ord % p == 0 && self.powu(x, ord / p) == Elt::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }
}
