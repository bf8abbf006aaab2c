//! Equivalence of Taniguchi functions: canonical parameters, constructive
//! witnesses and automorphism group orders.
//!
//! Two APN members f_{k,a,b} and f_{l,c,d} on GF(2^m)^2, m >= 3, are
//! CCZ-equivalent exactly when their canonical triples agree. The triple
//! normalizes k to min(k, m-k), a to 1 (or keeps the a = 0 class, which
//! exists only for even m) and b to the smallest member of the Frobenius
//! orbit of b / a^(2^-k+1).

mod linear;
mod witness;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{taniguchi, PottZhouParams, TaniguchiParams};
use crate::gf2m::{gcd, FieldCtx, FieldElement};
use crate::poly_roots::{phi_set, transform_beta};

pub use linear::{gf2_inverse, gf2_rank, Bilinearized, Linearized, PairMap, MAX_INVERT_DEGREE};
pub use witness::{
    frobenius_witness, negation_witness, scale_witness, swap_witness, verify_witness, LinearWitness,
    MAX_VERIFY_DIMENSION,
};

use witness::{check_verify_size, WitnessTables};

/// Largest m for the monomial automorphism oracle.
pub const MAX_AUT_ORACLE_DEGREE: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalTriple {
    pub k_star: u32,
    pub alpha_star: FieldElement,
    /// 0 marks the single alpha = 0 class for this k_star.
    pub beta_star: FieldElement,
}

fn check_field(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<()> {
    p.validate()?;
    if ctx.degree() != p.m {
        return Err(Error::DegreeMismatch(p.m, ctx.degree()));
    }
    Ok(())
}

fn require_apn(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<()> {
    if !p.criterion_apn(ctx)? {
        return Err(Error::NotApn(format!(
            "f(k={}, alpha={}, beta={}) on m={}",
            p.k, p.alpha, p.beta, p.m
        )));
    }
    Ok(())
}

fn orbit_min(ctx: &FieldCtx, b: FieldElement) -> FieldElement {
    ctx.frobenius_orbit(b).into_iter().min().expect("orbits are nonempty")
}

/// The normalized constant term b / a^(2^-k+1) of an a != 0 member.
pub fn normalized_beta(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<FieldElement> {
    transform_beta(i64::from(p.k), p.alpha, p.beta, ctx)
}

pub fn canonicalize(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<CanonicalTriple> {
    check_field(p, ctx)?;
    if p.m < 3 {
        return Err(Error::InvalidParams(format!(
            "canonical parameters are defined for m >= 3, got m={}",
            p.m
        )));
    }
    require_apn(p, ctx)?;
    let k_star = p.k.min(p.m - p.k);
    if p.alpha.is_zero() {
        return Ok(CanonicalTriple {
            k_star,
            alpha_star: FieldElement::ZERO,
            beta_star: FieldElement::ZERO,
        });
    }
    Ok(CanonicalTriple {
        k_star,
        alpha_star: FieldElement::ONE,
        beta_star: orbit_min(ctx, normalized_beta(p, ctx)?),
    })
}

pub fn are_ccz_equivalent(p1: &TaniguchiParams, p2: &TaniguchiParams, ctx: &FieldCtx) -> Result<bool> {
    if p1.m != p2.m {
        return Err(Error::DegreeMismatch(p1.m, p2.m));
    }
    Ok(canonicalize(p1, ctx)? == canonicalize(p2, ctx)?)
}

/// Numerically smallest non-cube; the fixed beta of the alpha = 0 representative.
pub fn smallest_non_cube(ctx: &FieldCtx) -> Option<FieldElement> {
    ctx.nonzero_elements().find(|&a| !ctx.is_cube(a).expect("nonzero"))
}

/// The class member used as target for witnesses: (k*, 1, b*) or, for the
/// alpha = 0 class, (k*, 0, smallest non-cube).
pub fn representative(t: &CanonicalTriple, ctx: &FieldCtx) -> Result<TaniguchiParams> {
    let beta = if t.alpha_star.is_zero() {
        smallest_non_cube(ctx).ok_or_else(|| Error::InvalidParams("alpha = 0 needs even m".into()))?
    } else {
        t.beta_star
    };
    TaniguchiParams::new(ctx.degree(), t.k_star, t.alpha_star, beta)
}

/// Least lambda != 0 with lambda^(2^k+1) = target, if any.
fn gold_root(ctx: &FieldCtx, k: u32, target: FieldElement) -> Option<FieldElement> {
    ctx.nonzero_elements()
        .find(|&l| ctx.gold_power(l, i64::from(k)) == target)
}

/// A witness mapping f_p onto its class representative.
pub fn canonicalizing_witness(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<(TaniguchiParams, LinearWitness)> {
    let t = canonicalize(p, ctx)?;
    let target = representative(&t, ctx)?;
    let m = p.m;
    let ks = t.k_star;
    let negated = p.k != ks;
    let mut w = LinearWitness::identity(m);

    if p.alpha.is_zero() {
        // now at f_{k*,0,gamma}
        let mut gamma = p.beta;
        if negated {
            w = w.then(&negation_witness(m, ks, gamma), ctx);
            gamma = ctx.inverse(gamma)?;
        }
        if !ctx.is_cube(ctx.div(target.beta, gamma)?)? {
            // the square root lies in the other non-cube coset
            let root = ctx.pow2k(gamma, -1);
            w = w.then(&frobenius_witness(m, 1), ctx);
            gamma = root;
        }
        let lambda = gold_root(ctx, ks, ctx.div(target.beta, gamma)?)
            .ok_or_else(|| Error::InvalidParams("no scaling between the alpha = 0 members".into()))?;
        w = w.then(&scale_witness(m, lambda), ctx);
        return Ok((target, w));
    }

    // alpha -> 1 at the original k
    let lambda = ctx.inverse(ctx.pow2k(p.alpha, -i64::from(p.k)))?;
    w = w.then(&scale_witness(m, lambda), ctx);
    let mut gamma = normalized_beta(p, ctx)?;
    if negated {
        // f_{-k*,1,g} -> f_{k*,1/g,1/g} -> f_{k*,1,g^(2^-k*)}
        w = w.then(&negation_witness(m, ks, gamma), ctx);
        let inv = ctx.inverse(gamma)?;
        let lambda = ctx.inverse(ctx.pow2k(inv, -i64::from(ks)))?;
        w = w.then(&scale_witness(m, lambda), ctx);
        gamma = ctx.pow2k(gamma, -i64::from(ks));
    }
    // f_{k*,1,gamma} -> f_{k*,1,b*} with b* = gamma^(2^j)
    let j = (0..m)
        .find(|&j| ctx.pow2k(gamma, i64::from(j)) == target.beta)
        .expect("b* lies in the orbit of gamma");
    if j != 0 {
        w = w.then(&frobenius_witness(m, -i64::from(j)), ctx);
    }
    Ok((target, w))
}

/// A witness f_{p1} -> f_{p2}, or `None` when the canonical triples differ.
pub fn equivalence_witness(
    p1: &TaniguchiParams,
    p2: &TaniguchiParams,
    ctx: &FieldCtx,
) -> Result<Option<LinearWitness>> {
    if p1.m != p2.m {
        return Err(Error::DegreeMismatch(p1.m, p2.m));
    }
    if canonicalize(p1, ctx)? != canonicalize(p2, ctx)? {
        return Ok(None);
    }
    if p1 == p2 {
        return Ok(Some(LinearWitness::identity(p1.m)));
    }
    let (_, w1) = canonicalizing_witness(p1, ctx)?;
    let (_, w2) = canonicalizing_witness(p2, ctx)?;
    Ok(Some(w1.then(&w2.inverse(ctx)?, ctx)))
}

/// The Pott-Zhou function g_{k,2k,1/b} linearly equivalent to f_{k,0,b},
/// with the witness f -> g.
pub fn pott_zhou_bridge_witness(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<(PottZhouParams, LinearWitness)> {
    check_field(p, ctx)?;
    if !p.alpha.is_zero() {
        return Err(Error::InvalidParams("the Pott-Zhou bridge needs alpha = 0".into()));
    }
    require_apn(p, ctx)?;
    let g = PottZhouParams::new(p.m, p.k, (2 * p.k) % p.m, ctx.inverse(p.beta)?)?;
    Ok((g, swap_witness(p.m, p.beta)))
}

/// Monomial EL-automorphism L_A = a X^(2^u), L_B = b Y^(2^u) with
/// b = a^(2^2k), N1 = c X^(2^u), c = b^(2^k+1), N4 = a b X^(2^u).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutWitness {
    pub u: u32,
    pub a_u: FieldElement,
    pub b_bar_u: FieldElement,
    pub c_u: FieldElement,
}

impl AutWitness {
    pub fn new(k: u32, u: u32, a_u: FieldElement, ctx: &FieldCtx) -> Self {
        let b_bar_u = ctx.pow2k(a_u, 2 * i64::from(k));
        let c_u = ctx.gold_power(b_bar_u, i64::from(k));
        AutWitness { u, a_u, b_bar_u, c_u }
    }

    pub fn to_linear(&self, ctx: &FieldCtx) -> LinearWitness {
        let m = ctx.degree();
        let u = i64::from(self.u);
        let z = || Linearized::zero(m);
        let mono = |c| Linearized::monomial(m, c, u);
        let l = PairMap {
            first: Bilinearized::new(mono(self.a_u), z()),
            second: Bilinearized::new(z(), mono(self.b_bar_u)),
        };
        let n = PairMap {
            first: Bilinearized::new(mono(self.c_u), z()),
            second: Bilinearized::new(z(), mono(ctx.mul(self.a_u, self.b_bar_u))),
        };
        LinearWitness::from_maps(&l, &n, &PairMap::zero(m))
    }
}

/// Orders of the EL-, EA- and full automorphism groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutOrders {
    pub aut_el: u128,
    pub aut_ea: u128,
    pub aut: u128,
    /// Known constants for m = 2, 3 rather than the general formula.
    pub hard_coded: bool,
}

pub fn aut_orders(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<AutOrders> {
    check_field(p, ctx)?;
    require_apn(p, ctx)?;
    let m = p.m;
    let translations = 1u128 << (2 * m);
    let known = |aut: u128| AutOrders {
        aut_el: aut / translations,
        aut_ea: aut,
        aut,
        hard_coded: true,
    };
    match m {
        2 => return Ok(known(5760)),
        3 => return Ok(known(896)),
        _ => {}
    }
    let mq = u128::from(m) * ((1u128 << m) - 1);
    let aut_el = if p.alpha.is_zero() {
        if m == 4 {
            3 * mq
        } else {
            3 * mq / 2
        }
    } else {
        let period = ctx.frobenius_period(normalized_beta(p, ctx)?);
        mq / u128::from(period)
    };
    Ok(AutOrders {
        aut_el,
        aut_ea: translations * aut_el,
        aut: translations * aut_el,
        hard_coded: false,
    })
}

/// |Aut| of an APN Pott-Zhou function g_{k,s,a} with m >= 4.
pub fn pott_zhou_aut_order(m: u32, s: u32) -> u128 {
    let base = 3 * u128::from(m) * ((1u128 << m) - 1);
    if s == 0 || 2 * s == m || s == m {
        base << (2 * m)
    } else {
        base << (2 * m - 1)
    }
}

/// Counts the monomial tuples (u, a_u) whose witness maps f_p onto itself.
pub fn count_monomial_el_automorphisms(p: &TaniguchiParams, ctx: &FieldCtx) -> Result<u128> {
    check_field(p, ctx)?;
    if p.alpha != FieldElement::ONE {
        return Err(Error::InvalidParams("the automorphism oracle needs alpha = 1".into()));
    }
    if p.m > MAX_AUT_ORACLE_DEGREE {
        return Err(Error::TooLarge(format!(
            "automorphism oracle needs m <= {MAX_AUT_ORACLE_DEGREE}, got {}",
            p.m
        )));
    }
    check_verify_size(ctx)?;
    require_apn(p, ctx)?;
    let table = taniguchi(*p, ctx)?.packed_table()?;
    let candidates: Vec<(u32, FieldElement)> = (0..p.m)
        .flat_map(|u| ctx.nonzero_elements().map(move |a| (u, a)))
        .collect();
    let hits = candidates
        .par_iter()
        .filter(|&&(u, a)| {
            let w = AutWitness::new(p.k, u, a, ctx).to_linear(ctx);
            WitnessTables::new(&w, ctx).holds(&table, &table)
        })
        .count();
    Ok(hits as u128)
}

/// One CCZ class found by enumeration, with how many parameter tuples hit it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub triple: CanonicalTriple,
    pub members: u64,
}

/// Largest m accepted by [`enumerate_classes`].
pub const MAX_CLASS_DEGREE: u32 = 20;

/// Canonical classes over every APN (k, alpha, beta) with alpha in {0, 1};
/// restricted to one k when given.
///
/// Equivalent to canonicalizing each tuple, but read off the admissible sets
/// directly: for alpha = 1 the class of beta is its orbit minimum, and all
/// non-cubes with alpha = 0 share one class per k*.
pub fn enumerate_classes(ctx: &FieldCtx, k: Option<u32>) -> Result<Vec<ClassEntry>> {
    let m = ctx.degree();
    if !(3..=MAX_CLASS_DEGREE).contains(&m) {
        return Err(Error::InvalidParams(format!(
            "class enumeration needs 3 <= m <= {MAX_CLASS_DEGREE}, got {m}"
        )));
    }
    let ks: Vec<u32> = match k {
        Some(k) => {
            TaniguchiParams::new(m, k, FieldElement::ONE, FieldElement::ONE)?;
            vec![k]
        }
        None => (1..m).filter(|&k| gcd(u64::from(k), u64::from(m)) == 1).collect(),
    };
    let non_cubes = if m % 2 == 0 { 2 * ctx.group_order() / 3 } else { 0 };
    let mut classes: BTreeMap<CanonicalTriple, u64> = BTreeMap::new();
    for k in ks {
        let k_star = k.min(m - k);
        if non_cubes > 0 {
            let t = CanonicalTriple {
                k_star,
                alpha_star: FieldElement::ZERO,
                beta_star: FieldElement::ZERO,
            };
            *classes.entry(t).or_insert(0) += non_cubes;
        }
        for beta in phi_set(i64::from(k), ctx)?.iter() {
            let t = CanonicalTriple {
                k_star,
                alpha_star: FieldElement::ONE,
                beta_star: orbit_min(ctx, beta),
            };
            *classes.entry(t).or_insert(0) += 1;
        }
    }
    Ok(classes
        .into_iter()
        .map(|(triple, members)| ClassEntry { triple, members })
        .collect())
}
