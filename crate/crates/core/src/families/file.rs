//! Truth-table files.
//!
//! Binary layout (all integers little-endian):
//!
//! ```text
//! offset 0  "APNT"            magic
//! offset 4  u8                version (1)
//! offset 5  u16               m
//! offset 7  u8                kind (0 explicit, 1 Taniguchi, 2 Pott-Zhou)
//! offset 8  2^(2m) x (u32,u32) coordinate pairs, index (x << m) | y
//! ```
//!
//! A JSON manifest next to the table records the modulus and, for family
//! members, the generating parameters.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{BivariateFunction, FunctionKind, PottZhouParams, TaniguchiParams, MAX_TABLE_DIMENSION};
use crate::error::{Error, Result};
use crate::gf2m::{FieldCtx, FieldElement};

pub const MAGIC: &[u8; 4] = b"APNT";
pub const VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Explicit,
    Taniguchi,
    PottZhou,
}

impl TableKind {
    fn code(self) -> u8 {
        match self {
            TableKind::Explicit => 0,
            TableKind::Taniguchi => 1,
            TableKind::PottZhou => 2,
        }
    }

    fn from_code(c: u8) -> Result<Self> {
        match c {
            0 => Ok(TableKind::Explicit),
            1 => Ok(TableKind::Taniguchi),
            2 => Ok(TableKind::PottZhou),
            _ => Err(Error::Parse(format!("unknown table kind {c}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratingParams {
    Taniguchi(TaniguchiParams),
    PottZhou(PottZhouParams),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: String,
    pub version: u8,
    pub m: u32,
    #[serde(with = "hex_u64")]
    pub modulus: u64,
    pub kind: TableKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<GeneratingParams>,
}

impl Manifest {
    pub fn for_function(f: &BivariateFunction) -> Self {
        let params = match f.kind() {
            FunctionKind::Taniguchi(p) => Some(GeneratingParams::Taniguchi(*p)),
            FunctionKind::PottZhou(p) => Some(GeneratingParams::PottZhou(*p)),
            FunctionKind::TruthTable(_) => None,
        };
        Manifest {
            format: String::from_utf8_lossy(MAGIC).into_owned(),
            version: VERSION,
            m: f.ctx().degree(),
            modulus: f.ctx().modulus(),
            kind: f.table_kind(),
            params,
        }
    }

    pub fn field(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.m, self.modulus)
    }
}

mod hex_u64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{v:#x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let s = String::deserialize(d)?;
        crate::gf2m::parse_modulus_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Writes the binary table to `out` and returns the matching manifest.
pub fn write_truth_table<W: Write>(f: &BivariateFunction, out: &mut W) -> Result<Manifest> {
    let m = f.ctx().degree();
    if 2 * m > MAX_TABLE_DIMENSION {
        return Err(Error::TooLarge(format!("truth table for 2m = {}", 2 * m)));
    }
    out.write_all(MAGIC)?;
    out.write_all(&[VERSION])?;
    out.write_all(&(m as u16).to_le_bytes())?;
    out.write_all(&[f.table_kind().code()])?;
    let mask = (1u32 << m) - 1;
    let mut buf = Vec::with_capacity(8 << m);
    for i in 0..1u32 << (2 * m) {
        let (a, b) = f.evaluate(FieldElement::from_bits(i >> m), FieldElement::from_bits(i & mask));
        buf.extend_from_slice(&a.bits().to_le_bytes());
        buf.extend_from_slice(&b.bits().to_le_bytes());
        if buf.len() >= 1 << 16 {
            out.write_all(&buf)?;
            buf.clear();
        }
    }
    out.write_all(&buf)?;
    Ok(Manifest::for_function(f))
}

/// Reads a binary table; the field comes from the manifest.
pub fn read_truth_table<R: Read>(input: &mut R, ctx: &FieldCtx) -> Result<(TableKind, BivariateFunction)> {
    let mut header = [0u8; 8];
    input.read_exact(&mut header)?;
    if &header[..4] != MAGIC {
        return Err(Error::Parse("bad magic, expected APNT".into()));
    }
    if header[4] != VERSION {
        return Err(Error::Parse(format!("unsupported version {}", header[4])));
    }
    let m = u32::from(u16::from_le_bytes([header[5], header[6]]));
    if m != ctx.degree() {
        return Err(Error::DegreeMismatch(m, ctx.degree()));
    }
    if 2 * m > MAX_TABLE_DIMENSION {
        return Err(Error::TooLarge(format!("truth table for 2m = {}", 2 * m)));
    }
    let kind = TableKind::from_code(header[7])?;
    let n = 1usize << (2 * m);
    let mut raw = vec![0u8; n * 8];
    input.read_exact(&mut raw)?;
    let mut trailing = [0u8; 1];
    if input.read(&mut trailing)? != 0 {
        return Err(Error::Parse("trailing bytes after truth table".into()));
    }
    let table = raw
        .chunks_exact(8)
        .map(|c| {
            let a = u32::from_le_bytes([c[0], c[1], c[2], c[3]]);
            let b = u32::from_le_bytes([c[4], c[5], c[6], c[7]]);
            (FieldElement::from_bits(a), FieldElement::from_bits(b))
        })
        .collect();
    Ok((kind, BivariateFunction::from_table(ctx, table)?))
}

pub fn read_manifest<R: Read>(input: R) -> Result<Manifest> {
    let manifest: Manifest = serde_json::from_reader(input).map_err(|e| Error::Parse(e.to_string()))?;
    if manifest.format != "APNT" || manifest.version != VERSION {
        return Err(Error::Parse(format!(
            "unsupported manifest {} v{}",
            manifest.format, manifest.version
        )));
    }
    Ok(manifest)
}
