//! Prints the number of inequivalent Taniguchi APN functions on GF(2^(2m))
//! next to the lower bound, for a few m including two large ones.
//!
//!     cargo run --example count_table

use taniguchi::counting::CountReport;

fn main() -> taniguchi::Result<()> {
    println!("{:>4}  {:>32}  {:>32}", "m", "inequivalent", "lower bound");
    for m in (2..=12).chain([25, 50, 100]) {
        let r = CountReport::compute(m)?;
        println!("{:>4}  {:>32}  {:>32}", r.m, r.n_taniguchi, r.lower_bound);
    }

    // The ingredients for one m.
    let r = CountReport::compute(9)?;
    println!();
    println!(
        "m=9: M={} N={} b={} epsilon={}",
        r.capital_m, r.capital_n, r.b, r.epsilon
    );
    println!("factorization of m: {:?}", r.factorization);
    Ok(())
}
