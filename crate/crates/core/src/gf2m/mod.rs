//! Arithmetic in GF(2^m) for 1 <= m <= 32.
//!
//! Elements are bit-packed polynomial residues modulo an irreducible
//! polynomial. A [`FieldCtx`] carries the degree and modulus; elements carry
//! only their bits, so every multiplicative operation goes through the
//! context.

mod moduli;
pub mod poly;

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use moduli::{parse_modulus_hex, standard_modulus, ModulusTable, STANDARD_MODULI};

/// An element of some GF(2^m), as a packed residue polynomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps raw bits without checking them against a field.
    pub const fn from_bits(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Parses hex with an optional `0x` prefix.
    pub fn parse_hex(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
        u32::from_str_radix(t, 16)
            .map(FieldElement)
            .map_err(|e| Error::Parse(format!("bad hex element {s:?}: {e}")))
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

// Elements travel as hex strings ("0x1b") in every JSON artifact.
impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:#x}", self.0))
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FieldElement::parse_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// The binary field GF(2^m) defined by an irreducible modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    m: u32,
    modulus: u64,
}

impl FieldCtx {
    /// Builds a context, checking that `modulus` is irreducible of degree `m`.
    pub fn new(m: u32, modulus: u64) -> Result<Self> {
        if !(1..=32).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        if poly::degree(modulus) != Some(m) || modulus & 1 == 0 || !poly::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { m, modulus });
        }
        Ok(FieldCtx { m, modulus })
    }

    /// The field with the built-in modulus for degree `m`.
    pub fn standard(m: u32) -> Result<Self> {
        Ok(FieldCtx {
            m,
            modulus: standard_modulus(m)?,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^m.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    /// Order of the multiplicative group, 2^m - 1.
    pub fn group_order(&self) -> u64 {
        self.order() - 1
    }

    fn mask(&self) -> u32 {
        (self.order() - 1) as u32
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        u64::from(a.0) < self.order()
    }

    /// Validated element constructor.
    pub fn elem(&self, bits: u64) -> Result<FieldElement> {
        if bits < self.order() {
            Ok(FieldElement(bits as u32))
        } else {
            Err(Error::ElementOutOfRange { m: self.m, bits })
        }
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..=self.mask()).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..=self.mask()).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let mut prod = poly::clmul(u64::from(a.0), u64::from(b.0));
        let m = self.m;
        let mut top = 2 * m;
        while top > m {
            top -= 1;
            if prod >> top & 1 == 1 {
                prod ^= self.modulus << (top - m);
            }
        }
        FieldElement(prod as u32)
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Normalizes a (possibly negative) Frobenius exponent into `0..m`.
    pub fn frobenius_index(&self, k: i64) -> u32 {
        k.rem_euclid(i64::from(self.m)) as u32
    }

    /// a^(2^k); negative k means the inverse automorphism, i.e. k mod m.
    pub fn pow2k(&self, a: FieldElement, k: i64) -> FieldElement {
        let mut r = a;
        for _ in 0..self.frobenius_index(k) {
            r = self.square(r);
        }
        r
    }

    /// a^e by square-and-multiply, with 0^0 = 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        let mut base = a;
        let mut e = e;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// a^(2^k + 1), the Gold-type power used throughout.
    pub fn gold_power(&self, a: FieldElement, k: i64) -> FieldElement {
        self.mul(self.pow2k(a, k), a)
    }

    pub fn inverse(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inverse(b)?))
    }

    /// True iff `a = c^3` for some c. Every element is a cube when m is odd.
    pub fn is_cube(&self, a: FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.m % 2 == 1 {
            return Ok(true);
        }
        Ok(self.pow(a, self.group_order() / 3) == FieldElement::ONE)
    }

    /// a lies in the subfield GF(2^d) (meaningful when d divides m).
    pub fn in_subfield(&self, a: FieldElement, d: u32) -> bool {
        self.pow2k(a, i64::from(d)) == a
    }

    /// Least u >= 1 with a^(2^u) = a; always a divisor of m.
    pub fn frobenius_period(&self, a: FieldElement) -> u32 {
        let mut r = self.square(a);
        let mut u = 1;
        while r != a {
            r = self.square(r);
            u += 1;
        }
        u
    }

    /// The Frobenius orbit {a, a^2, a^4, ...} in generation order.
    pub fn frobenius_orbit(&self, a: FieldElement) -> Vec<FieldElement> {
        let mut orbit = vec![a];
        let mut r = self.square(a);
        while r != a {
            orbit.push(r);
            r = self.square(r);
        }
        orbit
    }

    /// Embeds `a` from the subfield `small` into `self`.
    ///
    /// The image of X is a root of the small field's modulus in `self`; the
    /// numerically smallest root is used so the embedding is deterministic.
    pub fn embed_from(&self, small: &FieldCtx, a: FieldElement) -> Result<FieldElement> {
        let root = self.subfield_generator(small)?;
        let mut acc = FieldElement::ZERO;
        let mut power = FieldElement::ONE;
        for i in 0..small.m {
            if a.0 >> i & 1 == 1 {
                acc += power;
            }
            power = self.mul(power, root);
        }
        Ok(acc)
    }

    /// Smallest root in `self` of the modulus of `small`.
    pub fn subfield_generator(&self, small: &FieldCtx) -> Result<FieldElement> {
        if small.m == 0 || self.m % small.m != 0 {
            return Err(Error::InvalidParams(format!(
                "GF(2^{}) is not a subfield of GF(2^{})",
                small.m, self.m
            )));
        }
        self.elements()
            .find(|&x| self.eval_gf2_poly(small.modulus, x).is_zero())
            .ok_or_else(|| Error::InvalidParams("no root of the subfield modulus".into()))
    }

    /// Evaluates a GF(2)-coefficient polynomial at `x` (Horner).
    fn eval_gf2_poly(&self, p: u64, x: FieldElement) -> FieldElement {
        let Some(d) = poly::degree(p) else {
            return FieldElement::ZERO;
        };
        let mut acc = FieldElement::ZERO;
        for i in (0..=d).rev() {
            acc = self.mul(acc, x);
            if p >> i & 1 == 1 {
                acc += FieldElement::ONE;
            }
        }
        acc
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.m, self.modulus)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf8() -> FieldCtx {
        FieldCtx::new(3, 0b1011).unwrap()
    }

    fn e(b: u32) -> FieldElement {
        FieldElement::from_bits(b)
    }

    #[test]
    fn gf8_products() {
        let f = gf8();
        assert_eq!(f.mul(e(0b010), e(0b010)), e(0b100));
        assert_eq!(f.mul(e(0b010), e(0b100)), e(0b011));
        for a in f.elements() {
            assert_eq!(f.mul(a, FieldElement::ONE), a);
        }
    }

    #[test]
    fn gf8_powers() {
        let f = gf8();
        assert_eq!(f.pow2k(e(0b010), 1), e(0b100));
        assert_eq!(f.pow(e(0b010), 3), e(0b011));
        for a in f.elements() {
            assert_eq!(f.pow2k(a, 0), a);
            assert_eq!(f.pow2k(a, 3), a);
            assert_eq!(f.pow(a, 1), a);
            assert_eq!(f.pow2k(a, -1), f.pow2k(a, 2));
        }
        for a in f.nonzero_elements() {
            assert_eq!(f.pow(a, 7), FieldElement::ONE);
        }
        assert_eq!(f.pow(FieldElement::ZERO, 0), FieldElement::ONE);
    }

    #[test]
    fn gf8_inverse() {
        let f = gf8();
        assert_eq!(f.inverse(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(f.inverse(e(0b010)).unwrap(), e(0b101));
        assert_eq!(f.inverse(FieldElement::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn random_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [5u32, 11, 16, 23, 32] {
            let f = FieldCtx::standard(m).unwrap();
            for _ in 0..100 {
                let a = e(rng.gen_range(1..=(f.order() - 1)) as u32);
                assert_eq!(f.mul(a, f.inverse(a).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn cubes() {
        let f = FieldCtx::standard(4).unwrap();
        assert!(f.is_cube(FieldElement::ONE).unwrap());
        // brute-force image of cubing
        let mut images: Vec<_> = f.nonzero_elements().map(|c| f.pow(c, 3)).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 5);
        for a in f.nonzero_elements() {
            assert_eq!(f.is_cube(a).unwrap(), images.contains(&a));
        }
        let g = FieldCtx::standard(5).unwrap();
        assert!(g.nonzero_elements().all(|a| g.is_cube(a).unwrap()));
        assert_eq!(f.is_cube(FieldElement::ZERO), Err(Error::ZeroInput));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FieldCtx::new(4, 0b10101).is_err());
        assert!(FieldCtx::new(4, 0b1011).is_err());
        assert!(FieldCtx::new(3, 0b1010).is_err());
        assert!(FieldCtx::new(0, 0b11).is_err());
        assert!(FieldCtx::new(33, 0b11).is_err());
        assert!(gf8().elem(8).is_err());
        assert_eq!(gf8().elem(7).unwrap(), e(7));
    }

    #[test]
    fn frobenius_periods() {
        let f = FieldCtx::standard(6).unwrap();
        assert_eq!(f.frobenius_period(FieldElement::ONE), 1);
        for a in f.nonzero_elements() {
            let u = f.frobenius_period(a);
            assert_eq!(6 % u, 0);
            assert_eq!(f.frobenius_orbit(a).len() as u32, u);
        }
        // 2 elements of GF(4) \ GF(2), 6 of GF(8) \ GF(2), 54 of full period
        let count = |u| f.nonzero_elements().filter(|&a| f.frobenius_period(a) == u).count();
        assert_eq!((count(1), count(2), count(3), count(6)), (1, 2, 6, 54));
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        for (r, m) in [(2u32, 4u32), (2, 6), (3, 6), (3, 9), (4, 12), (5, 10)] {
            let small = FieldCtx::standard(r).unwrap();
            let big = FieldCtx::standard(m).unwrap();
            let images: Vec<_> = small.elements().map(|a| big.embed_from(&small, a).unwrap()).collect();
            for a in small.elements() {
                let ia = images[a.bits() as usize];
                assert!(big.in_subfield(ia, r));
                for b in small.elements() {
                    let ib = images[b.bits() as usize];
                    assert_eq!(images[(a + b).bits() as usize], ia + ib);
                    assert_eq!(images[small.mul(a, b).bits() as usize], big.mul(ia, ib));
                }
            }
        }
        let small = FieldCtx::standard(4).unwrap();
        let big = FieldCtx::standard(6).unwrap();
        assert!(big.embed_from(&small, FieldElement::ONE).is_err());
    }
}
