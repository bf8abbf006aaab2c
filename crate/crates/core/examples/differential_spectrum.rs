//! Differential spectra of an APN and a non-APN Taniguchi function, and of
//! the Gold function x^3 for comparison.
//!
//!     cargo run --release --example differential_spectrum

use taniguchi::diffanalysis::{differential_spectrum, DifferentialSpectrum};
use taniguchi::families::{gold, taniguchi, TaniguchiParams};
use taniguchi::{FieldCtx, FieldElement};

fn show(name: &str, s: &DifferentialSpectrum) {
    let hist: Vec<String> = s.histogram.iter().map(|(c, n)| format!("{c}:{n}")).collect();
    println!("{name:<28} uniformity {}  {}", s.uniformity, hist.join(" "));
}

fn main() -> taniguchi::Result<()> {
    let ctx = FieldCtx::standard(4)?;
    let good = TaniguchiParams::new(4, 1, FieldElement::ONE, FieldElement::from_bits(0x9))?;
    let bad = TaniguchiParams::new(4, 1, FieldElement::ONE, FieldElement::from_bits(0x2))?;

    let s = differential_spectrum(&taniguchi(good, &ctx)?)?;
    s.check_invariants()?;
    show("taniguchi beta=0x9", &s);
    show("taniguchi beta=0x2", &differential_spectrum(&taniguchi(bad, &ctx)?)?);

    let ctx8 = FieldCtx::standard(8)?;
    show("gold x^3 on GF(2^8)", &differential_spectrum(&gold(8, 1, &ctx8)?)?);
    Ok(())
}
