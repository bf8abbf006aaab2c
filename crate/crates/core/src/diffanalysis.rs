//! Exhaustive differential analysis of functions on GF(2)^n.
//!
//! Every function is reduced to a packed lookup table of 2^n outputs. For
//! each nonzero input difference `a` a single pass over x buckets the
//! derivative values f(x + a) + f(x); the bucket sizes are the solution
//! counts of f(x + a) + f(x) = b.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{BivariateFunction, GoldFunction};

/// Largest dimension n accepted by the exhaustive scans (2^(2n) work).
pub const MAX_SCAN_DIMENSION: u32 = 16;

/// A function given by its table of 2^n outputs, each below 2^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupTable {
    n: u32,
    values: Vec<u32>,
}

impl LookupTable {
    pub fn new(n: u32, values: Vec<u32>) -> Result<Self> {
        if n == 0 || n > 28 {
            return Err(Error::TooLarge(format!("lookup table dimension {n}")));
        }
        if values.len() as u64 != 1u64 << n {
            return Err(Error::InvalidParams(format!(
                "lookup table has {} entries, expected 2^{n}",
                values.len()
            )));
        }
        if values.iter().any(|&v| u64::from(v) >> n != 0) {
            return Err(Error::InvalidParams("lookup table output out of range".into()));
        }
        Ok(LookupTable { n, values })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

/// Anything that can be tabulated for the differential scans.
pub trait VectorialFunction {
    fn lookup_table(&self) -> Result<LookupTable>;
}

impl VectorialFunction for LookupTable {
    fn lookup_table(&self) -> Result<LookupTable> {
        Ok(self.clone())
    }
}

impl VectorialFunction for BivariateFunction {
    fn lookup_table(&self) -> Result<LookupTable> {
        LookupTable::new(self.dimension(), self.packed_table()?)
    }
}

impl VectorialFunction for GoldFunction {
    fn lookup_table(&self) -> Result<LookupTable> {
        LookupTable::new(self.ctx().degree(), self.packed_table()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialSpectrum {
    pub n: u32,
    pub uniformity: u64,
    /// solution count -> number of (a != 0, b) pairs attaining it
    pub histogram: BTreeMap<u64, u64>,
}

impl DifferentialSpectrum {
    pub fn is_apn(&self) -> bool {
        self.uniformity == 2
    }

    /// Checks evenness of every count and the total mass (2^n - 1) 2^n.
    pub fn check_invariants(&self) -> Result<()> {
        let q = 1u128 << self.n;
        let mass: u128 = self
            .histogram
            .iter()
            .map(|(&c, &f)| u128::from(c) * u128::from(f))
            .sum();
        let pairs: u128 = self.histogram.values().map(|&f| u128::from(f)).sum();
        let odd = self.histogram.keys().any(|c| c % 2 == 1);
        let max = self.histogram.keys().next_back().copied().unwrap_or(0);
        if odd || mass != (q - 1) * q || pairs != (q - 1) * q || max != self.uniformity || self.uniformity < 2 {
            return Err(Error::InvalidParams(format!(
                "inconsistent spectrum: n={} uniformity={} histogram={:?}",
                self.n, self.uniformity, self.histogram
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectra always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn check_scan_size(t: &LookupTable) -> Result<()> {
    if t.n > MAX_SCAN_DIMENSION {
        return Err(Error::TooLarge(format!(
            "exhaustive differential scan needs n <= {MAX_SCAN_DIMENSION}, got {}",
            t.n
        )));
    }
    Ok(())
}

/// Adds the solution counts of one input difference to `freq`
/// (`freq[c]` = number of b with exactly c solutions).
fn scan_difference(values: &[u32], a: usize, counters: &mut [u32], freq: &mut [u64]) {
    for (x, &fx) in values.iter().enumerate() {
        counters[(fx ^ values[x ^ a]) as usize] += 1;
    }
    for c in counters.iter_mut() {
        freq[*c as usize] += 1;
        *c = 0;
    }
}

/// Full differential spectrum over every (a != 0, b).
pub fn differential_spectrum<F: VectorialFunction + ?Sized>(f: &F) -> Result<DifferentialSpectrum> {
    let table = f.lookup_table()?;
    check_scan_size(&table)?;
    let q = table.values.len();
    let values = &table.values;
    let freq = (1..q)
        .into_par_iter()
        .fold(
            || (vec![0u32; q], vec![0u64; q + 1]),
            |(mut counters, mut freq), a| {
                scan_difference(values, a, &mut counters, &mut freq);
                (counters, freq)
            },
        )
        .map(|(_, freq)| freq)
        .reduce(
            || vec![0u64; q + 1],
            |mut acc, f| {
                acc.iter_mut().zip(f).for_each(|(x, y)| *x += y);
                acc
            },
        );
    let histogram: BTreeMap<u64, u64> = freq
        .into_iter()
        .enumerate()
        .filter(|&(_, f)| f != 0)
        .map(|(c, f)| (c as u64, f))
        .collect();
    let uniformity = histogram.keys().next_back().copied().unwrap_or(0);
    let spectrum = DifferentialSpectrum {
        n: table.n,
        uniformity,
        histogram,
    };
    spectrum.check_invariants()?;
    Ok(spectrum)
}

/// Differential uniformity 2, with early exit on the first count above 2.
pub fn is_apn<F: VectorialFunction + ?Sized>(f: &F) -> Result<bool> {
    let table = f.lookup_table()?;
    check_scan_size(&table)?;
    Ok(is_apn_table(&table))
}

pub(crate) fn is_apn_table(table: &LookupTable) -> bool {
    let q = table.values.len();
    let values = &table.values;
    (1..q).into_par_iter().try_for_each_init(
        || vec![0u8; q],
        |counters, a| {
            let mut ok = true;
            for (x, &fx) in values.iter().enumerate() {
                let slot = &mut counters[(fx ^ values[x ^ a]) as usize];
                *slot += 1;
                if *slot > 2 {
                    ok = false;
                    break;
                }
            }
            counters.iter_mut().for_each(|c| *c = 0);
            if ok {
                Ok(())
            } else {
                Err(())
            }
        },
    ) == Ok(())
}
