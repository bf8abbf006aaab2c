use std::collections::BTreeMap;

use super::FieldCtx;
use crate::error::{Error, Result};

/// Numerically smallest irreducible polynomial with nonzero constant term for
/// each degree 1..=32 (bit i = coefficient of X^i). Index 0 is degree 1.
pub const STANDARD_MODULI: [u64; 32] = [
    0x3,
    0x7,
    0xB,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11B,
    0x203,
    0x409,
    0x805,
    0x1009,
    0x201B,
    0x4021,
    0x8003,
    0x1002B,
    0x20009,
    0x40009,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x100001B,
    0x2000009,
    0x400001B,
    0x8000027,
    0x10000003,
    0x20000005,
    0x40000003,
    0x80000009,
    0x10000008D,
];

pub fn standard_modulus(m: u32) -> Result<u64> {
    if (1..=32).contains(&m) {
        Ok(STANDARD_MODULI[(m - 1) as usize])
    } else {
        Err(Error::DegreeOutOfRange(m))
    }
}

/// Parses a modulus written in hex, with or without a `0x` prefix.
pub fn parse_modulus_hex(s: &str) -> Result<u64> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("bad hex modulus {s:?}: {e}")))
}

/// Which modulus to use for each degree: the standard table plus per-degree
/// overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModulusTable {
    overrides: BTreeMap<u32, u64>,
}

impl ModulusTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers an override. Reducible or wrong-degree polynomials are rejected.
    pub fn set_override(&mut self, m: u32, modulus: u64) -> Result<()> {
        FieldCtx::new(m, modulus)?;
        self.overrides.insert(m, modulus);
        Ok(())
    }

    /// Parses an `m=HEX` override specification.
    pub fn add_spec(&mut self, spec: &str) -> Result<()> {
        let (m, hex) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected m=HEX, got {spec:?}")))?;
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in {spec:?}")))?;
        self.set_override(m, parse_modulus_hex(hex)?)
    }

    pub fn overrides(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.overrides.iter().map(|(&m, &f)| (m, f))
    }

    pub fn is_overridden(&self, m: u32) -> bool {
        self.overrides.contains_key(&m)
    }

    pub fn modulus(&self, m: u32) -> Result<u64> {
        match self.overrides.get(&m) {
            Some(&f) => Ok(f),
            None => standard_modulus(m),
        }
    }

    pub fn field(&self, m: u32) -> Result<FieldCtx> {
        FieldCtx::new(m, self.modulus(m)?)
    }
}
