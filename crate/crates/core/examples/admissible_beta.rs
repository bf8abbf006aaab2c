//! Lists the betas for which X^(2^k+1) + X + beta has no root in GF(2^m),
//! grouped into Frobenius orbits.
//!
//!     cargo run --example admissible_beta -- 6 1

use taniguchi::poly_roots::{count_roots, expected_phi_size, frobenius_orbits, phi_set};
use taniguchi::{FieldCtx, FieldElement};

fn main() -> taniguchi::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: u32 = args.next().map_or(6, |s| s.parse().expect("m"));
    let k: i64 = args.next().map_or(1, |s| s.parse().expect("k"));

    let ctx = FieldCtx::standard(m)?;
    let set = phi_set(k, &ctx)?;
    println!(
        "{ctx}, k={k}: {} admissible betas (expected {})",
        set.len(),
        expected_phi_size(m)
    );

    let orbits = frobenius_orbits(set.elements(), &ctx)?;
    for o in &orbits.orbits {
        let members: Vec<String> = ctx
            .frobenius_orbit(o.representative)
            .iter()
            .map(|b| b.to_string())
            .collect();
        println!("  length {:>2}: {}", o.length, members.join(" "));
    }

    // Each admissible beta really leaves the trinomial rootless.
    for b in set.iter() {
        assert_eq!(count_roots(k, FieldElement::ONE, b, &ctx)?, 0);
    }
    Ok(())
}
