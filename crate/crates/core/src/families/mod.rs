//! The Taniguchi, Pott-Zhou and Gold families.
//!
//! Functions on GF(2^(2m)) are handled bivariately, as maps on
//! GF(2^m) x GF(2^m). Truth tables are indexed by `(x << m) | y` and store
//! coordinate pairs.

mod file;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2m::{gcd, FieldCtx, FieldElement};
use crate::poly_roots::count_roots;

pub use file::{
    read_manifest, read_truth_table, write_truth_table, GeneratingParams, Manifest, TableKind, MAGIC, VERSION,
};

/// Largest 2m for which a full truth table may be built.
pub const MAX_TABLE_DIMENSION: u32 = 28;

fn coprime(k: u32, m: u32) -> bool {
    gcd(u64::from(k), u64::from(m)) == 1
}

/// Parameters of f_{k,alpha,beta}(x,y) =
/// (x^(2^2k (2^k+1)) + alpha x^(2^2k) y^(2^k) + beta y^(2^k+1), xy).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaniguchiParams {
    pub m: u32,
    pub k: u32,
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

impl TaniguchiParams {
    /// Checks 0 < k < m, gcd(k, m) = 1 and beta != 0. APN-ness is not required.
    pub fn new(m: u32, k: u32, alpha: FieldElement, beta: FieldElement) -> Result<Self> {
        let p = TaniguchiParams { m, k, alpha, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k >= self.m {
            return Err(Error::InvalidParams(format!(
                "need 0 < k < m, got k={} m={}",
                self.k, self.m
            )));
        }
        if !coprime(self.k, self.m) {
            return Err(Error::InvalidK {
                k: i64::from(self.k),
                m: self.m,
            });
        }
        if self.beta.is_zero() {
            return Err(Error::InvalidParams("beta must be nonzero".into()));
        }
        Ok(())
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        if ctx.degree() != self.m {
            return Err(Error::DegreeMismatch(self.m, ctx.degree()));
        }
        if !ctx.contains(self.alpha) || !ctx.contains(self.beta) {
            return Err(Error::InvalidParams(format!("alpha/beta outside GF(2^{})", self.m)));
        }
        Ok(())
    }

    /// APN iff X^(2^k+1) + alpha X + beta has no root in GF(2^m).
    pub fn criterion_apn(&self, ctx: &FieldCtx) -> Result<bool> {
        self.check_ctx(ctx)?;
        Ok(count_roots(i64::from(self.k), self.alpha, self.beta, ctx)? == 0)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement, y: FieldElement) -> (FieldElement, FieldElement) {
        let k = i64::from(self.k);
        let x4 = ctx.pow2k(x, 2 * k);
        let first = ctx.pow2k(ctx.gold_power(x, k), 2 * k)
            + ctx.mul(self.alpha, ctx.mul(x4, ctx.pow2k(y, k)))
            + ctx.mul(self.beta, ctx.gold_power(y, k));
        (first, ctx.mul(x, y))
    }
}

/// Parameters of g_{k,s,alpha}(x,y) = (x^(2^k+1) + alpha y^(2^s (2^k+1)), xy).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PottZhouParams {
    pub m: u32,
    pub k: u32,
    pub s: u32,
    pub alpha: FieldElement,
}

impl PottZhouParams {
    /// Checks m even, gcd(k, m) = 1, 0 <= s <= m and alpha != 0. The APN
    /// conditions (s even, alpha a non-cube) are reported by
    /// [`criterion_apn`](Self::criterion_apn), not enforced.
    pub fn new(m: u32, k: u32, s: u32, alpha: FieldElement) -> Result<Self> {
        let p = PottZhouParams { m, k, s, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m % 2 != 0 {
            return Err(Error::InvalidParams(format!("Pott-Zhou needs even m, got {}", self.m)));
        }
        if self.k > self.m || !coprime(self.k, self.m) {
            return Err(Error::InvalidK {
                k: i64::from(self.k),
                m: self.m,
            });
        }
        if self.s > self.m {
            return Err(Error::InvalidParams(format!("need 0 <= s <= m, got s={}", self.s)));
        }
        if self.alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        Ok(())
    }

    pub fn criterion_apn(&self, ctx: &FieldCtx) -> Result<bool> {
        if ctx.degree() != self.m {
            return Err(Error::DegreeMismatch(self.m, ctx.degree()));
        }
        Ok(self.s % 2 == 0 && !ctx.is_cube(self.alpha)?)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement, y: FieldElement) -> (FieldElement, FieldElement) {
        let k = i64::from(self.k);
        let twisted = ctx.pow2k(ctx.gold_power(y, k), i64::from(self.s));
        (ctx.gold_power(x, k) + ctx.mul(self.alpha, twisted), ctx.mul(x, y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionKind {
    Taniguchi(TaniguchiParams),
    PottZhou(PottZhouParams),
    TruthTable(Vec<(FieldElement, FieldElement)>),
}

/// A map GF(2^m)^2 -> GF(2^m)^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateFunction {
    ctx: FieldCtx,
    kind: FunctionKind,
}

pub fn taniguchi(params: TaniguchiParams, ctx: &FieldCtx) -> Result<BivariateFunction> {
    params.validate()?;
    params.check_ctx(ctx)?;
    Ok(BivariateFunction {
        ctx: *ctx,
        kind: FunctionKind::Taniguchi(params),
    })
}

pub fn pott_zhou(params: PottZhouParams, ctx: &FieldCtx) -> Result<BivariateFunction> {
    params.validate()?;
    if ctx.degree() != params.m {
        return Err(Error::DegreeMismatch(params.m, ctx.degree()));
    }
    if !ctx.contains(params.alpha) {
        return Err(Error::InvalidParams("alpha outside the field".into()));
    }
    Ok(BivariateFunction {
        ctx: *ctx,
        kind: FunctionKind::PottZhou(params),
    })
}

impl BivariateFunction {
    /// Wraps an explicit table of 2^(2m) coordinate pairs.
    pub fn from_table(ctx: &FieldCtx, table: Vec<(FieldElement, FieldElement)>) -> Result<Self> {
        let m = ctx.degree();
        if 2 * m > MAX_TABLE_DIMENSION {
            return Err(Error::TooLarge(format!("truth table for 2m = {}", 2 * m)));
        }
        if table.len() as u64 != 1u64 << (2 * m) {
            return Err(Error::InvalidParams(format!(
                "truth table has {} entries, expected 2^{}",
                table.len(),
                2 * m
            )));
        }
        if let Some((a, b)) = table.iter().find(|(a, b)| !ctx.contains(*a) || !ctx.contains(*b)) {
            return Err(Error::InvalidParams(format!(
                "table entry ({a}, {b}) outside the field"
            )));
        }
        Ok(BivariateFunction {
            ctx: *ctx,
            kind: FunctionKind::TruthTable(table),
        })
    }

    /// The map (x, y) -> (x, y); a handy linear reference.
    pub fn identity(ctx: &FieldCtx) -> Result<Self> {
        Self::from_fn(ctx, |x, y| (x, y))
    }

    /// Tabulates an arbitrary closure.
    pub fn from_fn<F>(ctx: &FieldCtx, f: F) -> Result<Self>
    where
        F: Fn(FieldElement, FieldElement) -> (FieldElement, FieldElement) + Sync,
    {
        let m = ctx.degree();
        if 2 * m > MAX_TABLE_DIMENSION {
            return Err(Error::TooLarge(format!("truth table for 2m = {}", 2 * m)));
        }
        let mask = (1u32 << m) - 1;
        let table = (0..1u32 << (2 * m))
            .into_par_iter()
            .map(|i| f(FieldElement::from_bits(i >> m), FieldElement::from_bits(i & mask)))
            .collect();
        Ok(BivariateFunction {
            ctx: *ctx,
            kind: FunctionKind::TruthTable(table),
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    /// Input/output dimension over GF(2): 2m.
    pub fn dimension(&self) -> u32 {
        2 * self.ctx.degree()
    }

    pub fn evaluate(&self, x: FieldElement, y: FieldElement) -> (FieldElement, FieldElement) {
        match &self.kind {
            FunctionKind::Taniguchi(p) => p.eval(&self.ctx, x, y),
            FunctionKind::PottZhou(p) => p.eval(&self.ctx, x, y),
            FunctionKind::TruthTable(t) => t[((x.bits() as usize) << self.ctx.degree()) | y.bits() as usize],
        }
    }

    /// APN verdict from the family's algebraic criterion; `None` for tables.
    pub fn criterion_apn(&self) -> Option<Result<bool>> {
        match &self.kind {
            FunctionKind::Taniguchi(p) => Some(p.criterion_apn(&self.ctx)),
            FunctionKind::PottZhou(p) => Some(p.criterion_apn(&self.ctx)),
            FunctionKind::TruthTable(_) => None,
        }
    }

    /// Full truth table of this function.
    pub fn materialize(&self) -> Result<BivariateFunction> {
        if let FunctionKind::TruthTable(_) = self.kind {
            return Ok(self.clone());
        }
        Self::from_fn(&self.ctx, |x, y| self.evaluate(x, y))
    }

    /// Packed table: entry `(x << m) | y` holds `(f1 << m) | f2`.
    pub fn packed_table(&self) -> Result<Vec<u32>> {
        let m = self.ctx.degree();
        if 2 * m > MAX_TABLE_DIMENSION {
            return Err(Error::TooLarge(format!("truth table for 2m = {}", 2 * m)));
        }
        let pack = |(a, b): (FieldElement, FieldElement)| (a.bits() << m) | b.bits();
        Ok(match &self.kind {
            FunctionKind::TruthTable(t) => t.iter().map(|&p| pack(p)).collect(),
            _ => {
                let mask = (1u32 << m) - 1;
                (0..1u32 << (2 * m))
                    .into_par_iter()
                    .map(|i| pack(self.evaluate(FieldElement::from_bits(i >> m), FieldElement::from_bits(i & mask))))
                    .collect()
            }
        })
    }

    pub fn table_kind(&self) -> TableKind {
        match self.kind {
            FunctionKind::Taniguchi(_) => TableKind::Taniguchi,
            FunctionKind::PottZhou(_) => TableKind::PottZhou,
            FunctionKind::TruthTable(_) => TableKind::Explicit,
        }
    }
}

/// x -> x^(2^i+1) on GF(2^n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldFunction {
    ctx: FieldCtx,
    i: u32,
}

pub fn gold(n: u32, i: u32, ctx_n: &FieldCtx) -> Result<GoldFunction> {
    if ctx_n.degree() != n {
        return Err(Error::DegreeMismatch(n, ctx_n.degree()));
    }
    if i == 0 || !coprime(i, n) {
        return Err(Error::InvalidParams(format!(
            "Gold exponent needs gcd(i, n) = 1, got i={i} n={n}"
        )));
    }
    Ok(GoldFunction { ctx: *ctx_n, i })
}

impl GoldFunction {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn evaluate(&self, x: FieldElement) -> FieldElement {
        self.ctx.gold_power(x, i64::from(self.i))
    }

    pub fn packed_table(&self) -> Result<Vec<u32>> {
        let n = self.ctx.degree();
        if n > MAX_TABLE_DIMENSION {
            return Err(Error::TooLarge(format!("truth table for n = {n}")));
        }
        Ok((0..1u32 << n)
            .into_par_iter()
            .map(|x| self.evaluate(FieldElement::from_bits(x)).bits())
            .collect())
    }
}
