//! Exact arithmetic, polynomials, truncated power series and the numeric
//! evaluators shared by the rest of the crate.

pub mod int;
pub mod numeric;
pub mod poly;
pub mod series;

pub use int::{
    binomial, binomial_general, factorial, falling_factorial, falling_factorial_i64, rat, ExactInt,
    ExactRat,
};
pub use numeric::{laguerre_assoc, log_gamma, pfq_truncated, Approx, StoppingRule};
pub use poly::DensePoly;
pub use series::ExactSeries;
