//! Exact-arithmetic checks for algebraic independence of p-adic power series
//! over analytic elements.
//!
//! The pipeline for a series `f` with `f(0) = 1` and a prime `p`:
//!
//! 1. [`series::dwork_check`] certifies `f(z) / f(z^p)` modulo `p^r`.
//! 2. [`newton::residue_of_series_logderiv`] counts roots of truncation
//!    polynomials on a residue disk and returns the residue of `f'/f` modulo
//!    `p^k`.
//! 3. [`diffop::indicial_data_mod`] reduces an annihilating operator modulo
//!    `M^t` at the disk center, and [`diffop::is_exponent`] tests the residue
//!    against its indicial polynomial.
//! 4. [`criterion::run_criterion`] combines these with disk disjointness into
//!    a verdict, `independent` or `inconclusive`.
//!
//! ```
//! use padic_indep::newton::{residue_of_series_logderiv, DiskId};
//! use padic_indep::series::gen_h;
//! use padic_indep::valuation::Prime;
//!
//! let p = Prime::new(3)?;
//! let cert = residue_of_series_logderiv(&gen_h(29), "h", p, 2, DiskId::new(1, p)?)?;
//! assert_eq!(cert.value, 4);
//! # Ok::<(), padic_indep::Error>(())
//! ```

pub mod bessel;
pub mod cli;
pub mod criterion;
pub mod diffop;
pub mod error;
pub mod modular;
pub mod newton;
pub mod poly;
pub mod ratfun;
pub mod report;
pub mod serial;
pub mod series;
pub mod valuation;

pub use error::{Error, Result};
