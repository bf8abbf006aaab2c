//! Compares the root criterion with an exhaustive derivative scan for every
//! (k, alpha, beta) with alpha in {0, 1} on GF(2^6).
//!
//!     cargo run --release --example apn_check

use taniguchi::diffanalysis::is_apn;
use taniguchi::families::{taniguchi, TaniguchiParams};
use taniguchi::gf2m::gcd;
use taniguchi::{FieldCtx, FieldElement};

fn main() -> taniguchi::Result<()> {
    let m = 3;
    let ctx = FieldCtx::standard(m)?;
    let (mut apn, mut total) = (0, 0);
    for k in (1..m).filter(|&k| gcd(k.into(), m.into()) == 1) {
        for alpha in [FieldElement::ZERO, FieldElement::ONE] {
            for beta in ctx.nonzero_elements() {
                let p = TaniguchiParams::new(m, k, alpha, beta)?;
                let by_criterion = p.criterion_apn(&ctx)?;
                let by_scan = is_apn(&taniguchi(p, &ctx)?)?;
                assert_eq!(by_criterion, by_scan, "{p:?}");
                total += 1;
                apn += usize::from(by_scan);
            }
        }
    }
    println!(
        "GF(2^{}): {apn} of {total} parameter choices are APN; criterion and scan agree",
        2 * m
    );
    Ok(())
}
