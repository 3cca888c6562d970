use num_complex::Complex64;
use num_traits::Zero;

use super::NormalPolynomial;
use crate::kernel::int::{rat_pow, to_f64, ExactRat};

/// Label `z` of the coherent state `|z>`, the eigenvector `a|z> = z|z>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPoint {
    pub z: Complex64,
}

impl CoherentPoint {
    pub fn new(re: f64, im: f64) -> Self {
        CoherentPoint {
            z: Complex64::new(re, im),
        }
    }
}

/// `<z| p |z> = sum c_ij conj(z)^i z^j`.
pub fn coherent_expectation(p: &NormalPolynomial, pt: CoherentPoint) -> Complex64 {
    let zbar = pt.z.conj();
    p.terms()
        .map(|((i, j), c)| zbar.powu(i) * pt.z.powu(j) * to_f64(c))
        .fold(Complex64::zero(), |acc, v| acc + v)
}

/// Exact `<z| p |z>` for real rational `z`, where it equals `sum c_ij z^{i+j}`.
pub fn coherent_expectation_exact(p: &NormalPolynomial, z: &ExactRat) -> ExactRat {
    p.terms()
        .map(|((i, j), c)| c * rat_pow(z, i + j))
        .fold(ExactRat::zero(), |acc, v| acc + v)
}
