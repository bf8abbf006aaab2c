//! Taniguchi APN functions on GF(2^(2m)).
//!
//! The crate builds the functions
//! f_{k,alpha,beta}(x,y) = (x^(2^2k (2^k+1)) + alpha x^(2^2k) y^(2^k) + beta y^(2^k+1), xy),
//! checks their APN property both by the root criterion and exhaustively,
//! decides CCZ-equivalence between family members with explicit, verifiable
//! linear witnesses, computes automorphism-group orders, and counts the
//! inequivalent members for any m.
//!
//! Modules, bottom up:
//!
//! * [`gf2m`]: GF(2^m) arithmetic;
//! * [`poly_roots`]: roots of X^(2^k+1) + aX + b and the admissible-beta set;
//! * [`families`]: Taniguchi, Pott-Zhou and Gold functions, truth-table files;
//! * [`diffanalysis`]: differential spectra and exhaustive APN checks;
//! * [`counting`]: closed-form counts with brute-force oracles;
//! * [`equivalence`]: canonical forms, witnesses, automorphism orders;
//! * [`cli`]: the command-line front end used by the `taniguchi` binary.

pub mod cli;
pub mod counting;
pub mod diffanalysis;
pub mod equivalence;
pub mod error;
pub mod families;
pub mod gf2m;
pub mod poly_roots;

pub use error::{Error, Result};
pub use gf2m::{FieldCtx, FieldElement};
