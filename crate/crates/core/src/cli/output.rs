//! Report rows and their json/csv/pretty renderings.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::counting::CountReport;
use crate::equivalence::Linearized;
use crate::error::{Error, Result};

/// One column of the count table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: u32,
    pub n: u128,
    pub bound: u128,
}

impl From<&CountReport> for TableRow {
    fn from(r: &CountReport) -> Self {
        TableRow {
            m: r.m,
            n: r.n_taniguchi,
            bound: r.lower_bound,
        }
    }
}

/// Formula-versus-oracle result for one m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub m: u32,
    pub ks: Vec<u32>,
    pub capital_m: u128,
    pub capital_n: u128,
    pub b: u128,
    pub pass: bool,
    pub mismatches: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AuditCsvRow {
    m: u32,
    k: String,
    #[serde(rename = "M")]
    capital_m: u128,
    #[serde(rename = "N")]
    capital_n: u128,
    b: u128,
    pass: bool,
    mismatches: String,
}

impl AuditRow {
    pub fn line(&self) -> String {
        let ks = join(&self.ks, ",");
        if self.pass {
            format!(
                "PASS m={} k={} M={} N={} b={}",
                self.m, ks, self.capital_m, self.capital_n, self.b
            )
        } else {
            format!("FAIL m={} k={} {}", self.m, ks, self.mismatches.join("; "))
        }
    }

    pub fn to_csv(rows: &[AuditRow]) -> Result<String> {
        let flat: Vec<AuditCsvRow> = rows
            .iter()
            .map(|r| AuditCsvRow {
                m: r.m,
                k: join(&r.ks, ";"),
                capital_m: r.capital_m,
                capital_n: r.capital_n,
                b: r.b,
                pass: r.pass,
                mismatches: r.mismatches.join(" | "),
            })
            .collect();
        to_csv(&flat)
    }

    pub fn from_csv(text: &str) -> Result<Vec<AuditRow>> {
        from_csv::<AuditCsvRow>(text)?
            .into_iter()
            .map(|r| {
                let ks =
                    r.k.split(';')
                        .map(|k| k.parse().map_err(|_| Error::Parse(format!("bad k list {:?}", r.k))))
                        .collect::<Result<_>>()?;
                let mismatches = if r.mismatches.is_empty() {
                    Vec::new()
                } else {
                    r.mismatches.split(" | ").map(str::to_string).collect()
                };
                Ok(AuditRow {
                    m: r.m,
                    ks,
                    capital_m: r.capital_m,
                    capital_n: r.capital_n,
                    b: r.b,
                    pass: r.pass,
                    mismatches,
                })
            })
            .collect()
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

pub fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("reports always serialize")
}

/// Right-aligned label/value grid, wrapped every `per_block` columns.
pub fn grid(labels: &[&str], columns: &[Vec<String>], per_block: usize) -> String {
    let label_w = labels.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (b, block) in columns.chunks(per_block).enumerate() {
        if b > 0 {
            out.push('\n');
        }
        let widths: Vec<usize> = block
            .iter()
            .map(|c| c.iter().map(String::len).max().unwrap_or(0))
            .collect();
        for (row, label) in labels.iter().enumerate() {
            out.push_str(&format!("{label:<label_w$}"));
            for (col, w) in block.iter().zip(&widths) {
                out.push_str(&format!("  {:>w$}", col[row], w = w));
            }
            out.push('\n');
        }
    }
    out
}

/// `0x3 X^(2^2) + X` style rendering; "0" for the zero polynomial.
pub fn linearized_str(p: &Linearized, var: &str) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| {
            let mono = if i == 0 {
                var.to_string()
            } else {
                format!("{var}^(2^{i})")
            };
            if c.bits() == 1 {
                mono
            } else {
                format!("{c} {mono}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn bilinear_str(x: &Linearized, y: &Linearized) -> String {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => linearized_str(x, "X"),
        (true, false) => linearized_str(y, "Y"),
        (false, false) => format!("{} + {}", linearized_str(x, "X"), linearized_str(y, "Y")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::FieldElement;

    #[test]
    fn table_rows_round_trip() {
        let rows: Vec<TableRow> = (2..=6)
            .map(|m| TableRow::from(&CountReport::compute(m).unwrap()))
            .collect();
        let csv = to_csv(&rows).unwrap();
        assert!(csv.starts_with("m,n,bound\n2,1,1\n3,1,1\n4,3,2\n"));
        assert_eq!(from_csv::<TableRow>(&csv).unwrap(), rows);
        let json = to_json(&rows);
        assert_eq!(serde_json::from_str::<Vec<TableRow>>(&json).unwrap(), rows);
    }

    #[test]
    fn audit_rows_round_trip() {
        let rows = vec![
            AuditRow {
                m: 5,
                ks: vec![1, 2],
                capital_m: 11,
                capital_n: 10,
                b: 3,
                pass: true,
                mismatches: vec![],
            },
            AuditRow {
                m: 6,
                ks: vec![1],
                capital_m: 21,
                capital_n: 18,
                b: 4,
                pass: false,
                mismatches: vec![
                    "k=1 N: formula 18, oracle 17".into(),
                    "k=1 b: formula 4, oracle 5".into(),
                ],
            },
        ];
        let csv = AuditRow::to_csv(&rows).unwrap();
        assert_eq!(AuditRow::from_csv(&csv).unwrap(), rows);
        assert_eq!(rows[0].line(), "PASS m=5 k=1,2 M=11 N=10 b=3");
    }

    #[test]
    fn grid_layout() {
        let cols = vec![
            vec!["2".to_string(), "1".to_string()],
            vec!["10".to_string(), "74".to_string()],
        ];
        assert_eq!(grid(&["m", "#"], &cols, 15), "m  2  10\n#  1  74\n");
        assert_eq!(grid(&["m", "#"], &cols, 1), "m  2\n#  1\n\nm  10\n#  74\n");
    }

    #[test]
    fn polynomial_rendering() {
        let p = Linearized::from_coeffs(
            &crate::gf2m::FieldCtx::standard(3).unwrap(),
            vec![FieldElement::ONE, FieldElement::ZERO, FieldElement::from_bits(5)],
        )
        .unwrap();
        assert_eq!(linearized_str(&p, "X"), "X + 0x5 X^(2^2)");
        assert_eq!(bilinear_str(&Linearized::zero(3), &p), "Y + 0x5 Y^(2^2)");
        assert_eq!(bilinear_str(&Linearized::zero(3), &Linearized::zero(3)), "0");
    }
}
