//! Polynomials over GF(2) packed into a `u64` (bit i = coefficient of X^i).
//!
//! Only what is needed to validate field moduli: degree, carry-less product,
//! remainder, gcd, and the Rabin-style irreducibility test.

/// Degree of `p`, or `None` for the zero polynomial.
pub fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carry-less product. Both operands must have degree < 32 so the result fits.
pub fn clmul(a: u64, b: u64) -> u64 {
    debug_assert!(a < (1 << 32) && b < (1 << 32));
    let mut acc = 0u64;
    let mut b = b;
    let mut shifted = a;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= shifted;
        }
        b >>= 1;
        shifted <<= 1;
    }
    acc
}

pub fn rem(mut a: u64, f: u64) -> u64 {
    let df = degree(f).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < df {
            break;
        }
        a ^= f << (da - df);
    }
    a
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// `f` is irreducible iff gcd(X^(2^i) - X, f) = 1 for every 1 <= i <= deg(f)/2.
pub fn is_irreducible(f: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 || d > 32 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = 0b10u64;
    let mut t = x;
    for _ in 1..=d / 2 {
        t = rem(clmul(t, t), f);
        if gcd(t ^ x, f) != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        // x^2+x+1, x^3+x+1, x^4+x+1 are irreducible
        assert!(is_irreducible(0b111));
        assert!(is_irreducible(0b1011));
        assert!(is_irreducible(0b10011));
        // x^2+1 = (x+1)^2, x^4+x^2+1 = (x^2+x+1)^2
        assert!(!is_irreducible(0b101));
        assert!(!is_irreducible(0b10101));
        assert!(!is_irreducible(0));
        assert!(!is_irreducible(1));
    }

    #[test]
    fn gcd_of_multiples() {
        let a = clmul(0b111, 0b1011);
        let b = clmul(0b111, 0b10011);
        assert_eq!(gcd(a, b), 0b111);
    }

    #[test]
    fn irreducible_count_degree_8() {
        // There are 30 monic irreducible polynomials of degree 8 over GF(2).
        let count = (256u64..512).filter(|&f| is_irreducible(f)).count();
        assert_eq!(count, 30);
    }
}
