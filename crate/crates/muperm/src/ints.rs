//! Small integer helpers used across modules.

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn modinv_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let tr = old_r - q * r;
        old_r = r;
        r = tr;
        let ts = old_s - q * s;
        old_s = s;
        s = ts;
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Canonical representative of `x` mod `modulus` in `[1, modulus]`.
///
/// Zero maps to `modulus` itself; this keeps exponents positive so that the
/// represented monomial still vanishes at zero.
pub(crate) fn canon_pos(x: i128, modulus: u64) -> u64 {
    let r = x.rem_euclid(modulus as i128) as u64;
    if r == 0 {
        modulus
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd_u64(12, 18), 6);
        assert_eq!(gcd_u64(0, 5), 5);
        assert_eq!(gcd_u64(7, 0), 7);
        assert_eq!(gcd_u64(1, 1), 1);
    }

    #[test]
    fn modinv_matches_definition() {
        for m in [5u64, 15, 255] {
            for a in 1..m {
                match modinv_u64(a, m) {
                    Some(inv) => assert_eq!((a as u128 * inv as u128) % m as u128, 1),
                    None => assert_ne!(gcd_u64(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn canon_range() {
        assert_eq!(canon_pos(0, 15), 15);
        assert_eq!(canon_pos(-1, 15), 14);
        assert_eq!(canon_pos(29, 15), 14);
        assert_eq!(canon_pos(15, 15), 15);
        assert_eq!(canon_pos(16, 15), 1);
    }
}
