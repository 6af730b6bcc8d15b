//! Cross-checks the field construction against an independent oracle that
//! re-derives the modulus by brute-force order counting and multiplies by
//! schoolbook polynomial arithmetic.

use muperm::gf::{Elt, EnumWhich, FieldCtx};

/// Schoolbook carry-less multiply of `F_2[x]` bit-polynomials, no reduction.
fn naive_clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
    }
    acc
}

/// Remainder of `a` modulo the degree-`n` bit-polynomial `m`, long division.
fn naive_mod(mut a: u64, m: u64, n: u32) -> u64 {
    while a >> n != 0 {
        let d = 63 - a.leading_zeros();
        a ^= m << (d - n);
    }
    a
}

/// Multiplicative order of the residue class of `x` modulo `m`, counted by
/// repeated multiplication. Equals `2^n - 1` iff `m` is primitive: a
/// reducible modulus has fewer than `2^n - 1` units, so no element reaches
/// that order.
fn order_of_x(m: u64, n: u32) -> u64 {
    let mut acc = 1u64;
    let bound = (1u64 << n) - 1;
    for steps in 1..=bound {
        acc = naive_mod(naive_clmul(acc, 2), m, n);
        if acc == 1 {
            return steps;
        }
        if acc == 0 {
            return 0;
        }
    }
    0
}

fn oracle_smallest_primitive(n: u32) -> u64 {
    let lo = 1u64 << n;
    ((lo + 1)..(2 * lo))
        .step_by(2)
        .find(|&m| order_of_x(m, n) == lo - 1)
        .expect("primitive polynomial exists")
}

#[test]
fn modulus_matches_independent_derivation() {
    for k in 1..=4u32 {
        let ctx = FieldCtx::new(k).unwrap();
        assert_eq!(
            ctx.modulus_bits() as u64,
            oracle_smallest_primitive(2 * k),
            "k = {k}"
        );
    }
}

#[test]
fn multiplication_matches_schoolbook_oracle() {
    for k in 1..=4u32 {
        let ctx = FieldCtx::new(k).unwrap();
        let n = 2 * k;
        let m = ctx.modulus_bits() as u64;
        for a in 0..ctx.size() as u64 {
            // stride keeps k = 4 quick while staying exhaustive for k <= 2
            for b in (0..ctx.size() as u64).step_by(if k < 3 { 1 } else { 5 }) {
                let expect = naive_mod(naive_clmul(a, b), m, n);
                let got = ctx.mul(ctx.elt(a as u32).unwrap(), ctx.elt(b as u32).unwrap());
                assert_eq!(got.bits() as u64, expect);
            }
        }
    }
}

#[test]
fn omega_is_cube_root_for_all_k() {
    for k in 1..=8u32 {
        let ctx = FieldCtx::new(k).unwrap();
        let w = ctx.omega();
        assert_ne!(w, Elt::ONE);
        assert_eq!(ctx.powu(w, 3), Elt::ONE);
        assert_eq!(ctx.add(ctx.add(ctx.mul(w, w), w), Elt::ONE), Elt::ZERO);
    }
}

#[test]
fn enumeration_is_duplicate_free_and_complete() {
    for k in 1..=5u32 {
        let ctx = FieldCtx::new(k).unwrap();
        let mut all: Vec<u32> = ctx
            .enumerate(EnumWhich::FullField)
            .iter()
            .map(|e| e.bits())
            .collect();
        all.sort_unstable();
        let expect: Vec<u32> = (0..ctx.size() as u32).collect();
        assert_eq!(all, expect);
    }
}
