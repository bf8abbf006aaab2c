//! Automorphism group orders, with the EL part cross-checked by brute force
//! for a monomial-like member.
//!
//!     cargo run --release --example automorphisms

use taniguchi::equivalence::{aut_orders, count_monomial_el_automorphisms, pott_zhou_aut_order};
use taniguchi::families::TaniguchiParams;
use taniguchi::{FieldCtx, FieldElement};

fn main() -> taniguchi::Result<()> {
    for m in [4, 5, 6] {
        let ctx = FieldCtx::standard(m)?;
        let beta = ctx.nonzero_elements().find(|&b| {
            TaniguchiParams::new(m, 1, FieldElement::ONE, b)
                .and_then(|p| p.criterion_apn(&ctx))
                .unwrap_or(false)
        });
        let p = TaniguchiParams::new(m, 1, FieldElement::ONE, beta.expect("some APN beta"))?;
        let o = aut_orders(&p, &ctx)?;
        let brute = count_monomial_el_automorphisms(&p, &ctx)?;
        println!(
            "m={m} beta={}: |Aut_EL|={} (enumerated {brute}) |Aut|={}",
            p.beta, o.aut_el, o.aut
        );
    }
    println!("Pott-Zhou m=6 s=2: |Aut|={}", pott_zhou_aut_order(6, 2));
    Ok(())
}
