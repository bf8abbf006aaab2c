//! Roots of the trinomial X^(2^k+1) + aX + b over GF(2^m), the set of
//! admissible b for which it is rootless, and Frobenius orbits of such sets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2m::{gcd, FieldCtx, FieldElement};

pub(crate) fn check_k(k: i64, ctx: &FieldCtx) -> Result<()> {
    let m = ctx.degree();
    if gcd(k.unsigned_abs(), u64::from(m)) != 1 {
        return Err(Error::InvalidK { k, m });
    }
    Ok(())
}

/// Value of X^(2^k+1) + alpha X + beta at `x`.
pub fn trinomial(ctx: &FieldCtx, k: i64, alpha: FieldElement, beta: FieldElement, x: FieldElement) -> FieldElement {
    ctx.gold_power(x, k) + ctx.mul(alpha, x) + beta
}

/// Exact number of roots in GF(2^m), by scanning every x.
pub fn count_roots(k: i64, alpha: FieldElement, beta: FieldElement, ctx: &FieldCtx) -> Result<u64> {
    check_k(k, ctx)?;
    let n = (0..ctx.order() as u32)
        .into_par_iter()
        .filter(|&x| trinomial(ctx, k, alpha, beta, FieldElement::from_bits(x)).is_zero())
        .count();
    Ok(n as u64)
}

/// The admissible set: every beta for which X^(2^k+1) + X + beta has no root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaSet {
    m: u32,
    k: i64,
    elements: Vec<FieldElement>,
}

impl BetaSet {
    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Sorted by bit value.
    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, b: FieldElement) -> bool {
        self.elements.binary_search(&b).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.elements.iter().copied()
    }

    /// Sorted JSON array of hex values.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.elements).expect("element vectors always serialize")
    }
}

/// Enumerates the admissible set by marking the image of x -> x^(2^k+1) + x;
/// beta has a root exactly when it is in that image.
pub fn phi_set(k: i64, ctx: &FieldCtx) -> Result<BetaSet> {
    check_k(k, ctx)?;
    if ctx.degree() > 28 {
        return Err(Error::TooLarge(format!(
            "admissible-set enumeration needs m <= 28, got {}",
            ctx.degree()
        )));
    }
    let q = ctx.order() as usize;
    let image: Vec<u32> = (0..q as u32)
        .into_par_iter()
        .map(|x| {
            let x = FieldElement::from_bits(x);
            (ctx.gold_power(x, k) + x).bits()
        })
        .collect();
    let mut hit = vec![false; q];
    for v in image {
        hit[v as usize] = true;
    }
    let elements = hit
        .iter()
        .enumerate()
        .filter(|(_, &h)| !h)
        .map(|(b, _)| FieldElement::from_bits(b as u32))
        .collect();
    Ok(BetaSet {
        m: ctx.degree(),
        k,
        elements,
    })
}

/// Size of the admissible set predicted for every k coprime to m.
pub fn expected_phi_size(m: u32) -> u64 {
    if m % 2 == 0 {
        ((1u64 << m) - 1) / 3
    } else {
        ((1u64 << m) + 1) / 3
    }
}

/// beta / alpha^(2^(-k)+1): the constant term after normalizing the linear
/// coefficient to 1.
pub fn transform_beta(k: i64, alpha: FieldElement, beta: FieldElement, ctx: &FieldCtx) -> Result<FieldElement> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let scale = ctx.gold_power(alpha, -k);
    ctx.div(beta, scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: FieldElement,
    pub length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
    pub total: u64,
}

impl OrbitDecomposition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbit lengths, sorted ascending.
    pub fn length_profile(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.orbits.iter().map(|o| o.length).collect();
        v.sort_unstable();
        v
    }
}

/// Partitions a Frobenius-closed set into orbits under squaring.
///
/// Orbits are listed by increasing representative, which is the smallest
/// member of each orbit.
pub fn frobenius_orbits(set: &[FieldElement], ctx: &FieldCtx) -> Result<OrbitDecomposition> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut seen = vec![false; sorted.len()];
    let mut orbits = Vec::new();
    for i in 0..sorted.len() {
        if seen[i] {
            continue;
        }
        let rep = sorted[i];
        seen[i] = true;
        let mut length = 1;
        let mut cur = ctx.square(rep);
        while cur != rep {
            let j = sorted
                .binary_search(&cur)
                .map_err(|_| Error::NotFrobeniusClosed(ctx.pow2k(cur, -1).bits()))?;
            seen[j] = true;
            length += 1;
            cur = ctx.square(cur);
        }
        orbits.push(Orbit {
            representative: rep,
            length,
        });
    }
    Ok(OrbitDecomposition {
        orbits,
        total: sorted.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: u32) -> FieldCtx {
        FieldCtx::standard(m).unwrap()
    }

    fn coprime_ks(m: u32) -> Vec<i64> {
        (1..m.max(2) as i64)
            .filter(|&k| gcd(k as u64, u64::from(m)) == 1)
            .collect()
    }

    #[test]
    fn zero_is_always_a_root_when_beta_is_zero() {
        for m in 2..=8 {
            let f = field(m);
            for k in coprime_ks(m) {
                assert!(count_roots(k, FieldElement::ONE, FieldElement::ZERO, &f).unwrap() >= 1);
                assert!(!phi_set(k, &f).unwrap().contains(FieldElement::ZERO));
            }
        }
    }

    #[test]
    fn small_admissible_sets() {
        assert_eq!(phi_set(1, &field(3)).unwrap().len(), 3);
        assert_eq!(phi_set(1, &field(4)).unwrap().len(), 5);
        let f3 = field(3);
        let rootless = f3
            .elements()
            .filter(|&b| count_roots(1, FieldElement::ONE, b, &f3).unwrap() == 0)
            .count();
        assert_eq!(rootless, 3);
    }

    #[test]
    fn invalid_k() {
        let f = field(6);
        assert_eq!(phi_set(2, &f), Err(Error::InvalidK { k: 2, m: 6 }));
        assert!(count_roots(3, FieldElement::ONE, FieldElement::ONE, &f).is_err());
        assert!(phi_set(-1, &f).is_ok());
    }

    #[test]
    fn root_count_trichotomy() {
        // x^(2^k+1) + x = x (x + 1)^(2^k), so beta = 0 always has the two roots 0 and 1
        for m in 1..=10 {
            let f = field(m);
            for k in coprime_ks(m) {
                let set = phi_set(k, &f).unwrap();
                for b in f.elements() {
                    let n = count_roots(k, FieldElement::ONE, b, &f).unwrap();
                    if b.is_zero() {
                        assert_eq!(n, 2);
                    } else {
                        assert!(matches!(n, 0 | 1 | 3), "m={m} k={k} b={b}: {n} roots");
                    }
                    assert_eq!(n == 0, set.contains(b));
                }
            }
        }
    }

    #[test]
    fn sizes_and_symmetry() {
        for m in 2..=16u32 {
            let f = field(m);
            for k in coprime_ks(m) {
                let s = phi_set(k, &f).unwrap();
                assert_eq!(s.len() as u64, expected_phi_size(m), "m={m} k={k}");
                let neg = phi_set(i64::from(m) - k, &f).unwrap();
                assert_eq!(s.elements(), neg.elements(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn orbit_profiles_do_not_depend_on_k() {
        for m in 2..=12u32 {
            let f = field(m);
            let profiles: Vec<_> = coprime_ks(m)
                .into_iter()
                .map(|k| {
                    let s = phi_set(k, &f).unwrap();
                    frobenius_orbits(s.elements(), &f).unwrap().length_profile()
                })
                .collect();
            assert!(profiles.windows(2).all(|w| w[0] == w[1]), "m={m}");
        }
    }

    #[test]
    fn sets_do_depend_on_k_beyond_the_sign() {
        // Number of distinct admissible sets among all coprime k equals the
        // number of +-k pairs, measured for m <= 12.
        let expected = [(5u32, 2usize), (7, 3), (8, 2), (9, 3), (10, 2), (11, 5), (12, 2)];
        for (m, distinct) in expected {
            let f = field(m);
            let mut sets: Vec<_> = coprime_ks(m)
                .into_iter()
                .map(|k| phi_set(k, &f).unwrap().elements().to_vec())
                .collect();
            sets.sort();
            sets.dedup();
            assert_eq!(sets.len(), distinct, "m={m}");
        }
    }

    #[test]
    fn orbit_decompositions() {
        let f3 = field(3);
        let d = frobenius_orbits(phi_set(1, &f3).unwrap().elements(), &f3).unwrap();
        assert_eq!(d.length_profile(), vec![3]);
        let f4 = field(4);
        let d = frobenius_orbits(phi_set(1, &f4).unwrap().elements(), &f4).unwrap();
        assert_eq!(d.length_profile(), vec![1, 4]);
        assert_eq!(d.orbits[0].representative, FieldElement::ONE);
        assert_eq!(d.total, 5);
        let d = frobenius_orbits(&[FieldElement::ONE], &f4).unwrap();
        assert_eq!(
            d.orbits,
            vec![Orbit {
                representative: FieldElement::ONE,
                length: 1
            }]
        );
        // x alone is not closed in GF(16)
        assert!(matches!(
            frobenius_orbits(&[FieldElement::from_bits(2)], &f4),
            Err(Error::NotFrobeniusClosed(_))
        ));
    }

    #[test]
    fn orbit_invariants() {
        for m in 2..=12u32 {
            let f = field(m);
            let d = frobenius_orbits(phi_set(1, &f).unwrap().elements(), &f).unwrap();
            let sum: u64 = d.orbits.iter().map(|o| u64::from(o.length)).sum();
            assert_eq!(sum, d.total);
            for o in &d.orbits {
                assert_eq!(m % o.length, 0);
                let min = f.frobenius_orbit(o.representative).into_iter().min().unwrap();
                assert_eq!(min, o.representative);
            }
        }
    }

    #[test]
    fn transform_beta_examples() {
        let f3 = FieldCtx::new(3, 0b1011).unwrap();
        for b in f3.elements() {
            assert_eq!(transform_beta(1, FieldElement::ONE, b, &f3).unwrap(), b);
        }
        for a in f3.nonzero_elements() {
            // a / a^(2^2+1) = a^(-4) = a^3 in a cyclic group of order 7
            assert_eq!(transform_beta(1, a, a, &f3).unwrap(), f3.pow(a, 3));
        }
        assert_eq!(
            transform_beta(1, FieldElement::ZERO, FieldElement::ONE, &f3),
            Err(Error::ZeroAlpha)
        );
    }

    #[test]
    fn transform_beta_preserves_rootlessness() {
        let f = field(4);
        for k in [1i64, 3] {
            for a in f.nonzero_elements() {
                for b in f.elements() {
                    let direct = count_roots(k, a, b, &f).unwrap() == 0;
                    let normalized =
                        count_roots(k, FieldElement::ONE, transform_beta(k, a, b, &f).unwrap(), &f).unwrap() == 0;
                    assert_eq!(direct, normalized, "k={k} a={a} b={b}");
                }
            }
        }
    }

    fn divisors_ok(r: u32, p: u32) {
        let m = r * p;
        let small = field(r);
        let big = field(m);
        for k in coprime_ks(m) {
            let sub = phi_set(k, &small).unwrap();
            let full = phi_set(k, &big).unwrap();
            for b in sub.iter() {
                let e = big.embed_from(&small, b).unwrap();
                assert_eq!(full.contains(e), p != 3, "r={r} p={p} k={k} b={b}");
            }
            if p == 3 {
                // conversely nothing of the subfield is admissible in the cubic extension
                let in_sub = full.iter().filter(|&b| big.in_subfield(b, r)).count();
                assert_eq!(in_sub, 0);
            }
        }
    }

    #[test]
    fn subfield_embedding() {
        for (r, p) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 3), (5, 2)] {
            divisors_ok(r, p);
        }
    }

    #[test]
    fn json_is_sorted_hex() {
        let s = phi_set(1, &field(4)).unwrap();
        let json = s.to_json();
        let parsed: Vec<FieldElement> = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, s.elements());
        assert!(json.starts_with("[\"0x1\""));
    }
}
