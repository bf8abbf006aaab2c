//! Linear-equivalence witnesses f(L(x,y)) = N(g(x,y)) + M(x,y) and their
//! exhaustive verification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linear::{Bilinearized, Linearized, PairMap};
use crate::error::{Error, Result};
use crate::families::BivariateFunction;
use crate::gf2m::{FieldCtx, FieldElement};

/// Largest 2m for exhaustive witness verification.
pub const MAX_VERIFY_DIMENSION: u32 = 20;

/// Input map L = (L_A, L_B), output map N(u, v) = (N1(u) + N3(v), N2(u) + N4(v))
/// and offset M = (M_A, M_B), such that
///
/// ```text
/// f1(L_A(x,y), L_B(x,y)) = N1(g1(x,y)) + N3(g2(x,y)) + M_A(x,y)
/// f2(L_A(x,y), L_B(x,y)) = N2(g1(x,y)) + N4(g2(x,y)) + M_B(x,y)
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearWitness {
    pub l_a: Bilinearized,
    pub l_b: Bilinearized,
    pub n1: Linearized,
    pub n2: Linearized,
    pub n3: Linearized,
    pub n4: Linearized,
    pub m_a: Bilinearized,
    pub m_b: Bilinearized,
}

impl LinearWitness {
    pub fn identity(m: u32) -> Self {
        Self::from_maps(&PairMap::identity(m), &PairMap::identity(m), &PairMap::zero(m))
    }

    pub fn from_maps(l: &PairMap, n: &PairMap, offset: &PairMap) -> Self {
        LinearWitness {
            l_a: l.first.clone(),
            l_b: l.second.clone(),
            n1: n.first.x.clone(),
            n3: n.first.y.clone(),
            n2: n.second.x.clone(),
            n4: n.second.y.clone(),
            m_a: offset.first.clone(),
            m_b: offset.second.clone(),
        }
    }

    /// Degree m of the underlying field.
    pub fn degree(&self) -> u32 {
        self.n1.degree_bound()
    }

    pub fn input_map(&self) -> PairMap {
        PairMap {
            first: self.l_a.clone(),
            second: self.l_b.clone(),
        }
    }

    pub fn output_map(&self) -> PairMap {
        PairMap {
            first: Bilinearized::new(self.n1.clone(), self.n3.clone()),
            second: Bilinearized::new(self.n2.clone(), self.n4.clone()),
        }
    }

    pub fn offset_map(&self) -> PairMap {
        PairMap {
            first: self.m_a.clone(),
            second: self.m_b.clone(),
        }
    }

    /// For `self`: f -> g and `next`: g -> h, the witness f -> h.
    pub fn then(&self, next: &LinearWitness, ctx: &FieldCtx) -> LinearWitness {
        let (l1, n1, m1) = (self.input_map(), self.output_map(), self.offset_map());
        let (l2, n2, m2) = (next.input_map(), next.output_map(), next.offset_map());
        let offset = n1.compose(&m2, ctx).add(&m1.compose(&l2, ctx));
        Self::from_maps(&l1.compose(&l2, ctx), &n1.compose(&n2, ctx), &offset)
    }

    /// For `self`: f -> g, the witness g -> f.
    pub fn inverse(&self, ctx: &FieldCtx) -> Result<LinearWitness> {
        let l_inv = self.input_map().inverse(ctx)?;
        let n_inv = self.output_map().inverse(ctx)?;
        let offset = n_inv.compose(&self.offset_map(), ctx).compose(&l_inv, ctx);
        Ok(Self::from_maps(&l_inv, &n_inv, &offset))
    }

    /// Both L and N are bijections (rank 2m over GF(2)).
    pub fn is_bijective(&self, ctx: &FieldCtx) -> bool {
        self.input_map().is_bijective(ctx) && self.output_map().is_bijective(ctx)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witnesses always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Per-component value tables of a witness, for fast pointwise checks.
pub(crate) struct WitnessTables {
    m: u32,
    l: [Vec<u32>; 4],
    n: [Vec<u32>; 4],
    off: [Vec<u32>; 4],
}

impl WitnessTables {
    pub(crate) fn new(w: &LinearWitness, ctx: &FieldCtx) -> Self {
        let t = |p: &Linearized| p.table(ctx);
        WitnessTables {
            m: ctx.degree(),
            l: [t(&w.l_a.x), t(&w.l_a.y), t(&w.l_b.x), t(&w.l_b.y)],
            n: [t(&w.n1), t(&w.n3), t(&w.n2), t(&w.n4)],
            off: [t(&w.m_a.x), t(&w.m_a.y), t(&w.m_b.x), t(&w.m_b.y)],
        }
    }

    /// Checks the identity at every point against packed tables of f and g.
    pub(crate) fn holds(&self, f: &[u32], g: &[u32]) -> bool {
        let m = self.m;
        let q = 1usize << m;
        let mask = (1u32 << m) - 1;
        let (l, n, off) = (&self.l, &self.n, &self.off);
        (0..q).into_par_iter().all(|x| {
            (0..q).all(|y| {
                let a = l[0][x] ^ l[1][y];
                let b = l[2][x] ^ l[3][y];
                let lhs = f[((a as usize) << m) | b as usize];
                let gv = g[(x << m) | y];
                let (g1, g2) = ((gv >> m) as usize, (gv & mask) as usize);
                let r1 = n[0][g1] ^ n[1][g2] ^ off[0][x] ^ off[1][y];
                let r2 = n[2][g1] ^ n[3][g2] ^ off[2][x] ^ off[3][y];
                lhs == (r1 << m) | r2
            })
        })
    }
}

pub(crate) fn check_verify_size(ctx: &FieldCtx) -> Result<()> {
    if 2 * ctx.degree() > MAX_VERIFY_DIMENSION {
        return Err(Error::TooLarge(format!(
            "exhaustive witness verification needs 2m <= {MAX_VERIFY_DIMENSION}, got {}",
            2 * ctx.degree()
        )));
    }
    Ok(())
}

/// True iff L and N are bijections and f(L(x,y)) = N(g(x,y)) + M(x,y) at
/// every point of GF(2^m)^2.
pub fn verify_witness(w: &LinearWitness, f: &BivariateFunction, g: &BivariateFunction) -> Result<bool> {
    let ctx = f.ctx();
    if g.ctx() != ctx {
        return Err(Error::InvalidParams(
            "functions are defined over different fields".into(),
        ));
    }
    if w.degree() != ctx.degree() {
        return Err(Error::DegreeMismatch(w.degree(), ctx.degree()));
    }
    check_verify_size(ctx)?;
    if !w.is_bijective(ctx) {
        return Ok(false);
    }
    let (ft, gt) = (f.packed_table()?, g.packed_table()?);
    Ok(WitnessTables::new(w, ctx).holds(&ft, &gt))
}

/// L = (X^(2^i), Y^(2^i)), N1 = N4 = X^(2^i): maps f_{k, a^(2^i), b^(2^i)} to f_{k,a,b}.
pub fn frobenius_witness(m: u32, i: i64) -> LinearWitness {
    let f = |c| Linearized::monomial(m, FieldElement::ONE, c);
    let z = || Linearized::zero(m);
    let fr = Bilinearized::new(f(i), z());
    let l = PairMap {
        first: fr.clone(),
        second: Bilinearized::new(z(), f(i)),
    };
    let n = l.clone();
    LinearWitness::from_maps(&l, &n, &PairMap::zero(m))
}

/// L_B = lambda Y, N4 = lambda X: maps f_{k,a,b} to
/// f_{k, a lambda^(2^k), b lambda^(2^k+1)}.
pub fn scale_witness(m: u32, lambda: FieldElement) -> LinearWitness {
    let mut l = PairMap::identity(m);
    l.second.y = Linearized::monomial(m, lambda, 0);
    let mut n = PairMap::identity(m);
    n.second.y = Linearized::monomial(m, lambda, 0);
    LinearWitness::from_maps(&l, &n, &PairMap::zero(m))
}

/// L_A = Y^(2^3k), L_B = X^(2^3k), N1 = beta X, N4 = X^(2^3k): maps
/// f_{-k,1,beta} to f_{k,1/beta,1/beta} and f_{-k,0,beta} to f_{k,0,1/beta}.
pub fn negation_witness(m: u32, k: u32, beta: FieldElement) -> LinearWitness {
    let e = 3 * i64::from(k);
    let z = || Linearized::zero(m);
    let l = PairMap {
        first: Bilinearized::new(z(), Linearized::monomial(m, FieldElement::ONE, e)),
        second: Bilinearized::new(Linearized::monomial(m, FieldElement::ONE, e), z()),
    };
    let n = PairMap {
        first: Bilinearized::new(Linearized::monomial(m, beta, 0), z()),
        second: Bilinearized::new(z(), Linearized::monomial(m, FieldElement::ONE, e)),
    };
    LinearWitness::from_maps(&l, &n, &PairMap::zero(m))
}

/// L_A = Y, L_B = X, N1 = beta X, N4 = X: maps f_{k,0,beta} to the Pott-Zhou
/// g_{k,2k,1/beta}.
pub fn swap_witness(m: u32, beta: FieldElement) -> LinearWitness {
    let z = || Linearized::zero(m);
    let l = PairMap {
        first: Bilinearized::new(z(), Linearized::identity(m)),
        second: Bilinearized::new(Linearized::identity(m), z()),
    };
    let n = PairMap {
        first: Bilinearized::new(Linearized::monomial(m, beta, 0), z()),
        second: Bilinearized::new(z(), Linearized::identity(m)),
    };
    LinearWitness::from_maps(&l, &n, &PairMap::zero(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{taniguchi, TaniguchiParams};

    fn e(b: u32) -> FieldElement {
        FieldElement::from_bits(b)
    }

    fn tan(ctx: &FieldCtx, k: u32, a: FieldElement, b: FieldElement) -> BivariateFunction {
        taniguchi(TaniguchiParams::new(ctx.degree(), k, a, b).unwrap(), ctx).unwrap()
    }

    #[test]
    fn identity_verifies() {
        let ctx = FieldCtx::standard(4).unwrap();
        let f = tan(&ctx, 1, e(1), e(6));
        assert!(verify_witness(&LinearWitness::identity(4), &f, &f).unwrap());
        let g = tan(&ctx, 1, e(1), e(7));
        assert!(!verify_witness(&LinearWitness::identity(4), &f, &g).unwrap());
    }

    #[test]
    fn elementary_maps() {
        let ctx = FieldCtx::standard(5).unwrap();
        let (a, b) = (e(7), e(19));
        // Frobenius twist
        for i in 0..5 {
            let f = tan(&ctx, 2, ctx.pow2k(a, i), ctx.pow2k(b, i));
            let g = tan(&ctx, 2, a, b);
            assert!(verify_witness(&frobenius_witness(5, i), &f, &g).unwrap(), "i={i}");
        }
        // scaling
        let lambda = e(11);
        let f = tan(&ctx, 2, a, b);
        let g = tan(
            &ctx,
            2,
            ctx.mul(a, ctx.pow2k(lambda, 2)),
            ctx.mul(b, ctx.gold_power(lambda, 2)),
        );
        assert!(verify_witness(&scale_witness(5, lambda), &f, &g).unwrap());
        // k -> -k
        let f = tan(&ctx, 3, e(1), b);
        let ib = ctx.inverse(b).unwrap();
        let g = tan(&ctx, 2, ib, ib);
        assert!(verify_witness(&negation_witness(5, 2, b), &f, &g).unwrap());
    }

    #[test]
    fn composition_and_inverse_verify() {
        let ctx = FieldCtx::standard(4).unwrap();
        let (a, b) = (e(3), e(9));
        let lambda = e(5);
        let w1 = frobenius_witness(4, 1);
        let w2 = scale_witness(4, lambda);
        let f = tan(&ctx, 1, ctx.square(a), ctx.square(b));
        let g = tan(&ctx, 1, a, b);
        let h = tan(
            &ctx,
            1,
            ctx.mul(a, ctx.square(lambda)),
            ctx.mul(b, ctx.gold_power(lambda, 1)),
        );
        assert!(verify_witness(&w1, &f, &g).unwrap());
        assert!(verify_witness(&w2, &g, &h).unwrap());
        let w = w1.then(&w2, &ctx);
        assert!(verify_witness(&w, &f, &h).unwrap());
        let back = w.inverse(&ctx).unwrap();
        assert!(verify_witness(&back, &h, &f).unwrap());
        assert_eq!(w.then(&back, &ctx), LinearWitness::identity(4));
    }

    #[test]
    fn inverse_carries_the_offset() {
        // f = g + M for a linear M, witness (id, id, M); its inverse must carry M back
        let ctx = FieldCtx::standard(3).unwrap();
        let g = tan(&ctx, 1, e(1), e(3));
        let off = PairMap {
            first: Bilinearized::new(Linearized::monomial(3, e(5), 1), Linearized::zero(3)),
            second: Bilinearized::new(Linearized::zero(3), Linearized::monomial(3, e(2), 2)),
        };
        let f = BivariateFunction::from_fn(&ctx, |x, y| {
            let (g1, g2) = g.evaluate(x, y);
            let (m1, m2) = off.eval(&ctx, x, y);
            (g1 + m1, g2 + m2)
        })
        .unwrap();
        let w = LinearWitness::from_maps(&PairMap::identity(3), &PairMap::identity(3), &off);
        assert!(verify_witness(&w, &f, &g).unwrap());
        assert!(verify_witness(&w.inverse(&ctx).unwrap(), &g, &f).unwrap());
    }

    #[test]
    fn singular_maps_are_rejected() {
        let ctx = FieldCtx::standard(3).unwrap();
        let f = tan(&ctx, 1, e(1), e(3));
        let mut w = LinearWitness::identity(3);
        w.l_b = Bilinearized::zero(3);
        assert!(!verify_witness(&w, &f, &f).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let w = negation_witness(5, 2, e(19));
        let json = w.to_json();
        assert!(json.contains("\"l_a\":{\"x\":[\"0x0\""));
        assert_eq!(LinearWitness::from_json(&json).unwrap(), w);
    }
}
