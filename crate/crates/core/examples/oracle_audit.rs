//! Checks the closed-form counts M, N and b against brute-force counting
//! for m up to 14.
//!
//!     cargo run --release --example oracle_audit

use taniguchi::cli::AuditRow;
use taniguchi::counting::{b_orbits, capital_m, capital_n, oracle_b, oracle_capital_n};
use taniguchi::poly_roots::expected_phi_size;

fn main() -> taniguchi::Result<()> {
    let mut failed = false;
    for m in 1..=14 {
        let (cm, cn, b) = (capital_m(m)?, capital_n(m)?, b_orbits(m)?);
        let mut mismatches = Vec::new();
        if u128::from(expected_phi_size(m)) != cm {
            mismatches.push("M".to_string());
        }
        if oracle_capital_n(m, 1)? != cn {
            mismatches.push("N".to_string());
        }
        if oracle_b(m, 1)? != b {
            mismatches.push("b".to_string());
        }
        let row = AuditRow {
            m,
            ks: vec![1],
            capital_m: cm,
            capital_n: cn,
            b,
            pass: mismatches.is_empty(),
            mismatches,
        };
        failed |= !row.pass;
        println!("{}", row.line());
    }
    if failed {
        std::process::exit(1);
    }
    Ok(())
}
