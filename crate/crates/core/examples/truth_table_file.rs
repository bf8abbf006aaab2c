//! Writes a function to the binary truth-table format, reads it back and
//! recomputes its spectrum from the stored values.
//!
//!     cargo run --release --example truth_table_file

use std::io::Cursor;

use taniguchi::diffanalysis::differential_spectrum;
use taniguchi::families::{read_manifest, read_truth_table, taniguchi, write_truth_table, TaniguchiParams};
use taniguchi::{FieldCtx, FieldElement};

fn main() -> taniguchi::Result<()> {
    let ctx = FieldCtx::standard(5)?;
    let p = TaniguchiParams::new(5, 1, FieldElement::ONE, FieldElement::from_bits(0x6))?;
    let f = taniguchi(p, &ctx)?;

    let mut bytes = Vec::new();
    let manifest = write_truth_table(&f, &mut bytes)?;
    let json = serde_json::to_string_pretty(&manifest).expect("manifest");
    println!("{} bytes of table\n{json}", bytes.len());

    let manifest = read_manifest(json.as_bytes())?;
    let (kind, g) = read_truth_table(&mut Cursor::new(bytes), &manifest.field()?)?;
    println!("kind {kind:?}");
    assert_eq!(differential_spectrum(&g)?, differential_spectrum(&f)?);
    println!(
        "spectrum preserved, uniformity {}",
        differential_spectrum(&g)?.uniformity
    );
    Ok(())
}
