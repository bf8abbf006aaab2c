//! Enumerates the CCZ classes of APN family members for small m and checks
//! that their number matches the closed-form count.
//!
//!     cargo run --release --example canonical_classes

use taniguchi::counting::n_taniguchi;
use taniguchi::equivalence::enumerate_classes;
use taniguchi::FieldCtx;

fn main() -> taniguchi::Result<()> {
    for m in 3..=10 {
        let ctx = FieldCtx::standard(m)?;
        let classes = enumerate_classes(&ctx, None)?;
        println!(
            "m={m:>2}: {:>3} classes (closed form {})",
            classes.len(),
            n_taniguchi(m)?
        );
        if m == 4 {
            for c in &classes {
                println!("        {:?} x{}", c.triple, c.members);
            }
        }
    }
    Ok(())
}
