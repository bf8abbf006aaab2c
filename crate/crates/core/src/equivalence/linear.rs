//! Linearized polynomials over GF(2^m) and the GF(2)-linear maps they define
//! on GF(2^m) and GF(2^m)^2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2m::{FieldCtx, FieldElement};

/// Largest m for which maps are inverted (interpolation scans the field).
pub const MAX_INVERT_DEGREE: u32 = 20;

/// sum_i c_i X^(2^i) for i in 0..m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Linearized(Vec<FieldElement>);

impl Linearized {
    pub fn zero(m: u32) -> Self {
        Linearized(vec![FieldElement::ZERO; m as usize])
    }

    /// c X^(2^i), with i reduced mod m.
    pub fn monomial(m: u32, c: FieldElement, i: i64) -> Self {
        let mut v = vec![FieldElement::ZERO; m as usize];
        v[i.rem_euclid(i64::from(m)) as usize] = c;
        Linearized(v)
    }

    pub fn identity(m: u32) -> Self {
        Self::monomial(m, FieldElement::ONE, 0)
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != ctx.degree() as usize {
            return Err(Error::InvalidParams(format!(
                "linearized polynomial needs {} coefficients, got {}",
                ctx.degree(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| !ctx.contains(c)) {
            return Err(Error::InvalidParams("coefficient outside the field".into()));
        }
        Ok(Linearized(coeffs))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn degree_bound(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut xi = x;
        for &c in &self.0 {
            if !c.is_zero() {
                acc += ctx.mul(c, xi);
            }
            xi = ctx.square(xi);
        }
        acc
    }

    /// Value table over all 2^m inputs, built from the images of the bit basis.
    pub fn table(&self, ctx: &FieldCtx) -> Vec<u32> {
        let m = ctx.degree();
        let basis: Vec<u32> = (0..m)
            .map(|j| self.eval(ctx, FieldElement::from_bits(1 << j)).bits())
            .collect();
        span_table(&basis)
    }

    pub fn add(&self, other: &Linearized) -> Linearized {
        Linearized(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// self(inner(X)).
    pub fn compose(&self, inner: &Linearized, ctx: &FieldCtx) -> Linearized {
        let m = self.0.len();
        let mut out = vec![FieldElement::ZERO; m];
        for (i, &p) in self.0.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, &q) in inner.0.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                out[(i + j) % m] += ctx.mul(p, ctx.pow2k(q, i as i64));
            }
        }
        Linearized(out)
    }

    /// Recovers the coefficients of a GF(2)-linear map from its value table:
    /// c_i = sum over x != 0 of F(x) x^(-2^i).
    pub fn interpolate(ctx: &FieldCtx, values: &[u32]) -> Result<Linearized> {
        let m = ctx.degree();
        if m > MAX_INVERT_DEGREE {
            return Err(Error::TooLarge(format!(
                "interpolation needs m <= {MAX_INVERT_DEGREE}, got {m}"
            )));
        }
        if values.len() as u64 != ctx.order() {
            return Err(Error::InvalidParams("value table has the wrong length".into()));
        }
        let mut w: Vec<FieldElement> = ctx
            .nonzero_elements()
            .map(|x| ctx.inverse(x).expect("nonzero"))
            .collect();
        let mut coeffs = Vec::with_capacity(m as usize);
        for _ in 0..m {
            let mut c = FieldElement::ZERO;
            for (idx, &wx) in w.iter().enumerate() {
                let v = values[idx + 1];
                if v != 0 {
                    c += ctx.mul(FieldElement::from_bits(v), wx);
                }
            }
            coeffs.push(c);
            w.iter_mut().for_each(|x| *x = ctx.square(*x));
        }
        Ok(Linearized(coeffs))
    }
}

/// table[v] = XOR of basis[j] over the set bits j of v.
pub(crate) fn span_table(basis: &[u32]) -> Vec<u32> {
    let n = basis.len();
    let mut t = vec![0u32; 1 << n];
    for v in 1..t.len() {
        t[v] = t[v & (v - 1)] ^ basis[v.trailing_zeros() as usize];
    }
    t
}

/// (x, y) -> P(x) + Q(y).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bilinearized {
    pub x: Linearized,
    pub y: Linearized,
}

impl Bilinearized {
    pub fn zero(m: u32) -> Self {
        Bilinearized {
            x: Linearized::zero(m),
            y: Linearized::zero(m),
        }
    }

    pub fn new(x: Linearized, y: Linearized) -> Self {
        Bilinearized { x, y }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement, y: FieldElement) -> FieldElement {
        self.x.eval(ctx, x) + self.y.eval(ctx, y)
    }

    fn add(&self, other: &Bilinearized) -> Bilinearized {
        Bilinearized::new(self.x.add(&other.x), self.y.add(&other.y))
    }
}

/// A linear map GF(2^m)^2 -> GF(2^m)^2 given by two coordinate rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMap {
    pub first: Bilinearized,
    pub second: Bilinearized,
}

impl PairMap {
    pub fn identity(m: u32) -> Self {
        PairMap {
            first: Bilinearized::new(Linearized::identity(m), Linearized::zero(m)),
            second: Bilinearized::new(Linearized::zero(m), Linearized::identity(m)),
        }
    }

    pub fn zero(m: u32) -> Self {
        PairMap {
            first: Bilinearized::zero(m),
            second: Bilinearized::zero(m),
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement, y: FieldElement) -> (FieldElement, FieldElement) {
        (self.first.eval(ctx, x, y), self.second.eval(ctx, x, y))
    }

    pub fn add(&self, other: &PairMap) -> PairMap {
        PairMap {
            first: self.first.add(&other.first),
            second: self.second.add(&other.second),
        }
    }

    /// self(inner(x, y)).
    pub fn compose(&self, inner: &PairMap, ctx: &FieldCtx) -> PairMap {
        let row = |r: &Bilinearized| {
            Bilinearized::new(
                r.x.compose(&inner.first.x, ctx).add(&r.y.compose(&inner.second.x, ctx)),
                r.x.compose(&inner.first.y, ctx).add(&r.y.compose(&inner.second.y, ctx)),
            )
        };
        PairMap {
            first: row(&self.first),
            second: row(&self.second),
        }
    }

    /// Images of the 2m bit-basis vectors, packed as (first << m) | second.
    /// Bit j < m is y bit j; bit m + j is x bit j.
    pub fn columns(&self, ctx: &FieldCtx) -> Vec<u64> {
        let m = ctx.degree();
        let pack = |(a, b): (FieldElement, FieldElement)| (u64::from(a.bits()) << m) | u64::from(b.bits());
        let mut cols = Vec::with_capacity(2 * m as usize);
        for j in 0..m {
            cols.push(pack(self.eval(
                ctx,
                FieldElement::ZERO,
                FieldElement::from_bits(1 << j),
            )));
        }
        for j in 0..m {
            cols.push(pack(self.eval(
                ctx,
                FieldElement::from_bits(1 << j),
                FieldElement::ZERO,
            )));
        }
        cols
    }

    pub fn is_bijective(&self, ctx: &FieldCtx) -> bool {
        gf2_rank(&self.columns(ctx)) == 2 * ctx.degree()
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Result<PairMap> {
        let m = ctx.degree();
        let inv = gf2_inverse(&self.columns(ctx))
            .ok_or_else(|| Error::InvalidParams("linear map is not invertible".into()))?;
        let mask = (1u64 << m) - 1;
        // component tables: x part from columns m.., y part from columns ..m
        let x_cols = &inv[m as usize..];
        let y_cols = &inv[..m as usize];
        let part =
            |cols: &[u64], shift: u32| -> Vec<u32> { cols.iter().map(|&c| ((c >> shift) & mask) as u32).collect() };
        let interp = |cols: &[u64], shift: u32| Linearized::interpolate(ctx, &span_table(&part(cols, shift)));
        Ok(PairMap {
            first: Bilinearized::new(interp(x_cols, m)?, interp(y_cols, m)?),
            second: Bilinearized::new(interp(x_cols, 0)?, interp(y_cols, 0)?),
        })
    }
}

/// Rank over GF(2) of the span of `vectors`.
pub fn gf2_rank(vectors: &[u64]) -> u32 {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() as u32
}

/// Inverts the square matrix whose j-th column is `cols[j]`; `None` if singular.
pub fn gf2_inverse(cols: &[u64]) -> Option<Vec<u64>> {
    let n = cols.len();
    let mut v = cols.to_vec();
    // invariant: A * t[j] = v[j]
    let mut t: Vec<u64> = (0..n).map(|j| 1u64 << j).collect();
    for r in 0..n {
        let p = (r..n).find(|&j| v[j] >> r & 1 == 1)?;
        v.swap(r, p);
        t.swap(r, p);
        for i in 0..n {
            if i != r && v[i] >> r & 1 == 1 {
                v[i] ^= v[r];
                t[i] ^= t[r];
            }
        }
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(b: u32) -> FieldElement {
        FieldElement::from_bits(b)
    }

    #[test]
    fn table_matches_eval() {
        let ctx = FieldCtx::standard(5).unwrap();
        let p = Linearized::from_coeffs(&ctx, vec![e(3), e(0), e(7), e(1), e(30)]).unwrap();
        let t = p.table(&ctx);
        for x in ctx.elements() {
            assert_eq!(t[x.bits() as usize], p.eval(&ctx, x).bits());
        }
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        for m in 1..=7 {
            let ctx = FieldCtx::standard(m).unwrap();
            let coeffs: Vec<_> = (0..m).map(|i| e((i * 5 + 3) % (1 << m))).collect();
            let p = Linearized::from_coeffs(&ctx, coeffs).unwrap();
            assert_eq!(Linearized::interpolate(&ctx, &p.table(&ctx)).unwrap(), p, "m={m}");
        }
    }

    #[test]
    fn composition_is_functional() {
        let ctx = FieldCtx::standard(6).unwrap();
        let p = Linearized::from_coeffs(&ctx, vec![e(1), e(9), e(0), e(0), e(44), e(2)]).unwrap();
        let q = Linearized::from_coeffs(&ctx, vec![e(0), e(3), e(61), e(0), e(1), e(0)]).unwrap();
        let pq = p.compose(&q, &ctx);
        for x in ctx.elements() {
            assert_eq!(pq.eval(&ctx, x), p.eval(&ctx, q.eval(&ctx, x)));
        }
    }

    #[test]
    fn pair_inverse() {
        let ctx = FieldCtx::standard(4).unwrap();
        let l = PairMap {
            first: Bilinearized::new(Linearized::monomial(4, e(3), 1), Linearized::identity(4)),
            second: Bilinearized::new(Linearized::zero(4), Linearized::monomial(4, e(7), 2)),
        };
        assert!(l.is_bijective(&ctx));
        let inv = l.inverse(&ctx).unwrap();
        assert_eq!(l.compose(&inv, &ctx), PairMap::identity(4));
        assert_eq!(inv.compose(&l, &ctx), PairMap::identity(4));

        let singular = PairMap {
            first: Bilinearized::new(Linearized::identity(4), Linearized::identity(4)),
            second: Bilinearized::new(Linearized::identity(4), Linearized::identity(4)),
        };
        assert!(!singular.is_bijective(&ctx));
        assert!(singular.inverse(&ctx).is_err());
    }

    #[test]
    fn rank_and_inverse_of_bit_matrices() {
        assert_eq!(gf2_rank(&[1, 2, 3]), 2);
        assert_eq!(gf2_rank(&[0b110, 0b011, 0b101]), 2);
        let a = vec![0b011, 0b010, 0b111];
        let inv = gf2_inverse(&a).unwrap();
        // A * inv[j] = e_j
        for (j, &c) in inv.iter().enumerate() {
            let img = (0..3).filter(|&i| c >> i & 1 == 1).fold(0, |acc, i| acc ^ a[i]);
            assert_eq!(img, 1 << j);
        }
        assert!(gf2_inverse(&[1, 1]).is_none());
    }
}
