//! Maps an alpha = 0 Taniguchi function onto a Pott-Zhou function and
//! verifies the map exhaustively.
//!
//!     cargo run --release --example pott_zhou_bridge

use taniguchi::equivalence::{pott_zhou_bridge_witness, verify_witness};
use taniguchi::families::{pott_zhou, taniguchi, TaniguchiParams};
use taniguchi::{FieldCtx, FieldElement};

fn main() -> taniguchi::Result<()> {
    let m = 6;
    let ctx = FieldCtx::standard(m)?;
    let p = TaniguchiParams::new(m, 1, FieldElement::ZERO, FieldElement::from_bits(0x2))?;
    assert!(p.criterion_apn(&ctx)?);

    let (pz, w) = pott_zhou_bridge_witness(&p, &ctx)?;
    println!("{p:?}\n  -> {pz:?}");
    let ok = verify_witness(&w, &taniguchi(p, &ctx)?, &pott_zhou(pz, &ctx)?)?;
    println!("verified on all 2^{} inputs: {ok}", 2 * m);
    Ok(())
}
