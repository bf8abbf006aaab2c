//! Builds an explicit linear equivalence between two Taniguchi functions,
//! checks it on every input, and round-trips it through JSON.
//!
//!     cargo run --release --example equivalence_witness

use taniguchi::equivalence::{canonicalize, equivalence_witness, verify_witness, LinearWitness};
use taniguchi::families::{taniguchi, TaniguchiParams};
use taniguchi::{FieldCtx, FieldElement};

fn main() -> taniguchi::Result<()> {
    let ctx = FieldCtx::standard(4)?;
    let e = |b| FieldElement::from_bits(b);
    let p1 = TaniguchiParams::new(4, 1, e(0x1), e(0x9))?;
    let p2 = TaniguchiParams::new(4, 3, e(0x7), e(0xb))?;
    println!(
        "canonical forms: {:?} / {:?}",
        canonicalize(&p1, &ctx)?,
        canonicalize(&p2, &ctx)?
    );

    let w = equivalence_witness(&p1, &p2, &ctx)?.expect("same class");
    let (f, g) = (taniguchi(p1, &ctx)?, taniguchi(p2, &ctx)?);
    println!(
        "f(L(x,y)) = N(g(x,y)) + M(x,y) on all inputs: {}",
        verify_witness(&w, &f, &g)?
    );

    let back = LinearWitness::from_json(&w.to_json())?;
    assert_eq!(back, w);

    // The reverse direction comes from inverting every map.
    let inv = w.inverse(&ctx)?;
    println!("inverse verifies g -> f: {}", verify_witness(&inv, &g, &f)?);

    // alpha = 0 and alpha != 0 never meet.
    let p3 = TaniguchiParams::new(4, 1, e(0x0), e(0x2))?;
    println!(
        "witness to an alpha = 0 member: {:?}",
        equivalence_witness(&p1, &p3, &ctx)?.map(|_| ())
    );
    Ok(())
}
