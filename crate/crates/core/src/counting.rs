//! Closed-form counts of inequivalent Taniguchi APN functions, and the
//! brute-force oracles that check them at small m.
//!
//! The pipeline for one degree m:
//!
//! * `M(m)`: admissible constants beta, (2^m + (-1)^(m+1)) / 3;
//! * `N(m)`: admissible beta lying in no proper subfield (inclusion-exclusion
//!   over the prime divisors of m other than 3, with a correction epsilon);
//! * `b(m)`: Frobenius orbits of admissible beta, a divisor sum of N(m')/m';
//! * `n(m)`: phi(m) b(m) / 2 for odd m and phi(m) (b(m) + 1) / 2 for even m;
//! * the lower bound phi(m)/2 * ceil((2^m + 1) / (3m)).
//!
//! All arithmetic is exact in `u128`/`i128`, enough for m <= [`MAX_COUNT_DEGREE`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;
use crate::poly_roots::{frobenius_orbits, phi_set};

pub const MAX_COUNT_DEGREE: u32 = 125;

/// Largest m accepted by the brute-force oracles.
pub const MAX_ORACLE_DEGREE: u32 = 24;

fn check_degree(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    if m > MAX_COUNT_DEGREE {
        return Err(Error::TooLarge(format!(
            "exact counts support m <= {MAX_COUNT_DEGREE}, got {m}"
        )));
    }
    Ok(())
}

/// Prime factorization by trial division, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn of(mut n: u64) -> Self {
        let mut out = Vec::new();
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n > 1 {
            out.push((n, 1));
        }
        Factorization(out)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "1" {
            return Ok(Factorization(Vec::new()));
        }
        let bad = || Error::Parse(format!("bad factorization {s:?}"));
        s.split('*')
            .map(|part| match part.split_once('^') {
                Some((p, e)) => Ok((
                    p.trim().parse().map_err(|_| bad())?,
                    e.trim().parse().map_err(|_| bad())?,
                )),
                None => Ok((part.trim().parse().map_err(|_| bad())?, 1)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Factorization)
    }
}

pub fn euler_phi(m: u64) -> u64 {
    Factorization::of(m).0.iter().fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

fn pow2(e: u32) -> u128 {
    1u128 << e
}

/// |admissible set| = (2^m + (-1)^(m+1)) / 3.
pub fn capital_m(m: u32) -> Result<u128> {
    check_degree(m)?;
    Ok(if m % 2 == 1 {
        (pow2(m) + 1) / 3
    } else {
        (pow2(m) - 1) / 3
    })
}

/// Correction term of N(m): 2 when m has exactly one prime factor other than
/// 3 and m = 2 mod 4, else 0.
pub fn epsilon(m: u32) -> u32 {
    let t = Factorization::of(u64::from(m)).primes().filter(|&p| p != 3).count();
    if t == 1 && m % 4 == 2 {
        2
    } else {
        0
    }
}

/// Admissible beta in no proper subfield of GF(2^m).
pub fn capital_n(m: u32) -> Result<u128> {
    check_degree(m)?;
    let primes: Vec<u32> = Factorization::of(u64::from(m))
        .primes()
        .filter(|&p| p != 3)
        .map(|p| p as u32)
        .collect();
    if primes.is_empty() {
        return Ok((pow2(m) + 1) / 3);
    }
    // sum over squarefree products d of the non-3 primes of mu(d) 2^(m/d)
    let mut sum: i128 = 0;
    for mask in 0u32..1 << primes.len() {
        let d: u32 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .product();
        let term = pow2(m / d) as i128;
        if mask.count_ones() % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum -= i128::from(epsilon(m));
    if sum < 0 || sum % 3 != 0 {
        return Err(Error::Overflow(format!("N({m}) numerator {sum} not divisible by 3")));
    }
    Ok((sum / 3) as u128)
}

/// Number of Frobenius orbits of admissible beta.
pub fn b_orbits(m: u32) -> Result<u128> {
    check_degree(m)?;
    let mut total = 0u128;
    for d in divisors(m) {
        if (m / d) % 3 == 0 {
            continue;
        }
        let n = capital_n(d)?;
        if n % u128::from(d) != 0 {
            return Err(Error::NonIntegralOrbitCount { m: d, n });
        }
        total += n / u128::from(d);
    }
    Ok(total)
}

/// Number of CCZ-inequivalent Taniguchi APN functions on GF(2^(2m)).
/// For m = 2 all of them are equivalent, giving 1.
pub fn n_taniguchi(m: u32) -> Result<u128> {
    check_degree(m)?;
    match m {
        1 => Err(Error::InvalidParams("Taniguchi functions need m >= 2".into())),
        2 => Ok(1),
        _ => {
            let phi = u128::from(euler_phi(u64::from(m)));
            let b = b_orbits(m)?;
            let classes = if m % 2 == 1 { b } else { b + 1 };
            Ok(phi * classes / 2)
        }
    }
}

/// phi(m)/2 * ceil((2^m + 1) / (3m)); Table-style value 1 at m = 2.
pub fn lower_bound(m: u32) -> Result<u128> {
    check_degree(m)?;
    match m {
        1 => Err(Error::InvalidParams("the bound needs m >= 2".into())),
        2 => Ok(1),
        _ => {
            let phi = u128::from(euler_phi(u64::from(m)));
            let num = pow2(m) + 1;
            let den = 3 * u128::from(m);
            Ok(phi / 2 * num.div_ceil(den))
        }
    }
}

fn oracle_field(m: u32) -> Result<FieldCtx> {
    if m > MAX_ORACLE_DEGREE {
        return Err(Error::TooLarge(format!(
            "oracles need m <= {MAX_ORACLE_DEGREE}, got {m}"
        )));
    }
    FieldCtx::standard(m)
}

/// N(m) by definition: enumerate the admissible set and drop every beta
/// fixed by some proper sub-Frobenius x -> x^(2^d), d | m.
pub fn oracle_capital_n_in(k: i64, ctx: &FieldCtx) -> Result<u128> {
    let m = ctx.degree();
    if m > MAX_ORACLE_DEGREE {
        return Err(Error::TooLarge(format!(
            "oracles need m <= {MAX_ORACLE_DEGREE}, got {m}"
        )));
    }
    let proper: Vec<u32> = divisors(m).into_iter().filter(|&d| d < m).collect();
    let set = phi_set(k, ctx)?;
    let n = set
        .iter()
        .filter(|&b| !proper.iter().any(|&d| ctx.in_subfield(b, d)))
        .count();
    Ok(n as u128)
}

pub fn oracle_capital_n(m: u32, k: i64) -> Result<u128> {
    oracle_capital_n_in(k, &oracle_field(m)?)
}

/// b(m) by definition: the number of Frobenius orbits of the admissible set.
pub fn oracle_b_in(k: i64, ctx: &FieldCtx) -> Result<u128> {
    if ctx.degree() > MAX_ORACLE_DEGREE {
        return Err(Error::TooLarge(format!(
            "oracles need m <= {MAX_ORACLE_DEGREE}, got {}",
            ctx.degree()
        )));
    }
    let set = phi_set(k, ctx)?;
    Ok(frobenius_orbits(set.elements(), ctx)?.len() as u128)
}

pub fn oracle_b(m: u32, k: i64) -> Result<u128> {
    oracle_b_in(k, &oracle_field(m)?)
}

/// Output of the counting pipeline for one m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub m: u32,
    pub capital_m: u128,
    pub capital_n: u128,
    pub b: u128,
    pub n_taniguchi: u128,
    pub lower_bound: u128,
    pub epsilon: u32,
    pub factorization: Vec<(u64, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Flat CSV form: `m,M,N,b,n,bound,epsilon,factorization`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CountRow {
    m: u32,
    #[serde(rename = "M")]
    capital_m: u128,
    #[serde(rename = "N")]
    capital_n: u128,
    b: u128,
    n: u128,
    bound: u128,
    epsilon: u32,
    factorization: String,
}

pub const CSV_HEADER: &str = "m,M,N,b,n,bound,epsilon,factorization";

pub const M2_NOTE: &str = "m = 2: every Taniguchi APN function is equivalent to x^3; n and bound fixed to 1";

impl CountReport {
    pub fn compute(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("count reports need m >= 2, got {m}")));
        }
        let report = CountReport {
            m,
            capital_m: capital_m(m)?,
            capital_n: capital_n(m)?,
            b: b_orbits(m)?,
            n_taniguchi: n_taniguchi(m)?,
            lower_bound: lower_bound(m)?,
            epsilon: epsilon(m),
            factorization: Factorization::of(u64::from(m)).0,
            note: (m == 2).then(|| M2_NOTE.to_string()),
        };
        debug_assert!(report.n_taniguchi >= report.lower_bound);
        Ok(report)
    }

    fn row(&self) -> CountRow {
        CountRow {
            m: self.m,
            capital_m: self.capital_m,
            capital_n: self.capital_n,
            b: self.b,
            n: self.n_taniguchi,
            bound: self.lower_bound,
            epsilon: self.epsilon,
            factorization: Factorization(self.factorization.clone()).to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Writes reports as CSV with [`CSV_HEADER`].
pub fn reports_to_csv(reports: &[CountReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(r.row()).map_err(|e| Error::Io(e.to_string()))?;
    }
    if reports.is_empty() {
        return Ok(format!("{CSV_HEADER}\n"));
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Parses CSV produced by [`reports_to_csv`]. The m = 2 note is restored.
pub fn reports_from_csv(text: &str) -> Result<Vec<CountReport>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize::<CountRow>()
        .map(|row| {
            let row = row.map_err(|e| Error::Parse(e.to_string()))?;
            Ok(CountReport {
                m: row.m,
                capital_m: row.capital_m,
                capital_n: row.capital_n,
                b: row.b,
                n_taniguchi: row.n,
                lower_bound: row.bound,
                epsilon: row.epsilon,
                factorization: row.factorization.parse::<Factorization>()?.0,
                note: (row.m == 2).then(|| M2_NOTE.to_string()),
            })
        })
        .collect()
}
