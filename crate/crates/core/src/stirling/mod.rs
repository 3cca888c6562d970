//! Generalized Stirling numbers `S_{r,s}(n,k)`, the coefficients of
//! `(a†)^k a^k` in the normal form of `[(a†)^r a^s]^n`, and their row sums
//! (generalized Bell numbers).
//!
//! Triangles are stored in the canonical orientation `r >= s`; queries with
//! `r < s` go through the symmetry `S_{r,s} = S_{s,r}`.

mod dobinski;
mod identities;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::int::{
    binomial, exact_div, factorial, falling_factorial_i64, rat_int, rat_pow, ExactInt, ExactRat,
};
use crate::kernel::DensePoly;

pub use dobinski::{
    dobinski_bell_numeric, dobinski_series_identity, dobinski_sum, gamma_form_bell_numeric,
    DobinskiForm,
};
pub use identities::{
    bell22_from_classical, classical_stirling, connection_identity_check, lah, stirling_diag_sum,
};

/// The exponent pair `(r, s)` of `(a†)^r a^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderSignature {
    pub r: u32,
    pub s: u32,
}

impl OrderSignature {
    pub fn new(r: u32, s: u32) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(Error::InvalidArgument(format!(
                "signature needs r, s >= 1, got ({r}, {s})"
            )));
        }
        Ok(OrderSignature { r, s })
    }

    /// Panicking constructor for literals in tests and tables.
    pub const fn of(r: u32, s: u32) -> Self {
        assert!(r >= 1 && s >= 1);
        OrderSignature { r, s }
    }

    pub fn is_canonical(self) -> bool {
        self.r >= self.s
    }

    /// The same coefficient family with `r >= s`.
    pub fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            self.swapped()
        }
    }

    pub fn swapped(self) -> Self {
        OrderSignature {
            r: self.s,
            s: self.r,
        }
    }

    pub fn is_diagonal(self) -> bool {
        self.r == self.s
    }

    /// Smallest `k` with a nonzero entry in any row.
    pub fn k_min(self) -> u32 {
        self.r.min(self.s)
    }

    /// Largest `k` with a nonzero entry in row `n`.
    pub fn k_max(self, n: u32) -> u32 {
        n * self.k_min()
    }

    fn require_canonical(self, op: &str) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{op} needs r >= s, got ({}, {})",
                self.r, self.s
            )))
        }
    }
}

impl fmt::Display for OrderSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.s)
    }
}

fn require_positive_n(n: u32, op: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{op} needs n >= 1")))
    } else {
        Ok(())
    }
}

/// `prod_{j=1}^{n} (p + (j-1)(r-s))^(s)` for a canonical signature.
pub(crate) fn shifted_falling_product(sig: OrderSignature, n: u32, p: i64) -> ExactInt {
    let step = (sig.r - sig.s) as i64;
    let mut acc = BigInt::one();
    for j in 0..n as i64 {
        let f = falling_factorial_i64(p + j * step, sig.s);
        if f.is_zero() {
            return f;
        }
        acc *= f;
    }
    acc
}

/// `((-1)^k / k!) sum_{p=lo}^{k} (-1)^p C(k,p) products[p]`, dividing last.
fn alternating_sum(
    k: u32,
    lo: u32,
    products: impl Fn(u32) -> ExactInt,
    context: impl FnOnce() -> String,
) -> Result<ExactInt> {
    let mut acc = BigInt::zero();
    for p in lo..=k {
        let term = binomial(k as u64, p as i64) * products(p);
        if (k - p).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    exact_div(&acc, &factorial(k as u64), context)
}

/// Alternating finite-sum form of `S_{r,s}(n,k)` (requires `r >= s`, `n >= 1`).
pub fn stirling_sum(sig: OrderSignature, n: u32, k: i64) -> Result<ExactInt> {
    sig.require_canonical("stirling_sum")?;
    require_positive_n(n, "stirling_sum")?;
    if k < sig.s as i64 || k > (n * sig.s) as i64 {
        return Ok(BigInt::zero());
    }
    let k = k as u32;
    alternating_sum(
        k,
        sig.s,
        |p| shifted_falling_product(sig, n, p as i64),
        || format!("S{sig}({n}, {k}) by alternating sum"),
    )
}

/// Row `n` of the triangle by the alternating-sum form, for `k = s..=ns`.
///
/// Same formula as [`stirling_sum`] with the `p`-products computed once.
pub fn stirling_sum_row(sig: OrderSignature, n: u32) -> Result<Vec<ExactInt>> {
    sig.require_canonical("stirling_sum_row")?;
    require_positive_n(n, "stirling_sum_row")?;
    let k_max = n * sig.s;
    let products: Vec<ExactInt> = (0..=k_max)
        .map(|p| {
            if p < sig.s {
                BigInt::zero()
            } else {
                shifted_falling_product(sig, n, p as i64)
            }
        })
        .collect();
    (sig.s..=k_max)
        .map(|k| {
            alternating_sum(
                k,
                sig.s,
                |p| products[p as usize].clone(),
                || format!("S{sig}({n}, {k}) by alternating sum"),
            )
        })
        .collect()
}

/// Differential-operator form of `S_{r,s}(n,k)`: apply `x^r d^s/dx^s` `n` times to
/// `(1-x)^k - sum_{p<s} C(k,p) (-x)^p`, evaluate at 1, and scale by `(-1)^k / k!`.
///
/// Unlike [`stirling_sum`] this does not short-circuit outside `s <= k <= ns`.
pub fn stirling_operator(sig: OrderSignature, n: u32, k: i64) -> Result<ExactInt> {
    sig.require_canonical("stirling_operator")?;
    require_positive_n(n, "stirling_operator")?;
    if k < 0 {
        return Ok(BigInt::zero());
    }
    let k = k as u32;
    let one_minus_x = DensePoly::new(vec![ExactRat::one(), -ExactRat::one()]);
    let mut poly = one_minus_x.pow(k);
    for p in 0..sig.s.min(k + 1) {
        let c = rat_int(&binomial(k as u64, p as i64)) * rat_pow(&-ExactRat::one(), p);
        poly = &poly - &DensePoly::monomial(c, p as usize);
    }
    for _ in 0..n {
        poly = poly.derivative(sig.s).shift(sig.r as usize);
    }
    let at_one = poly.eval(&ExactRat::one());
    let signed = if k.is_multiple_of(2) { at_one } else { -at_one };
    let scaled = signed / rat_int(&factorial(k as u64));
    if scaled.is_integer() {
        Ok(scaled.to_integer())
    } else {
        Err(Error::NonIntegral {
            context: format!("S{sig}({n}, {k}) by operator form"),
        })
    }
}

/// Which algorithm fills a [`StirlingTriangle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Sum,
    Operator,
    Recurrence,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Sum, Algorithm::Operator, Algorithm::Recurrence];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sum => "sum",
            Algorithm::Operator => "operator",
            Algorithm::Recurrence => "recurrence",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Algorithm::Sum),
            "operator" => Ok(Algorithm::Operator),
            "recurrence" => Ok(Algorithm::Recurrence),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm {other:?}"
            ))),
        }
    }
}

/// Rows `1..=n_max` of `S_{r,s}(n,k)` for a canonical signature.
///
/// `rows[n-1][k-s]` holds `S_{r,s}(n,k)` for `s <= k <= ns`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTriangle {
    signature: OrderSignature,
    n_max: u32,
    rows: Vec<Vec<ExactInt>>,
}

impl StirlingTriangle {
    /// Builds the triangle for `sig` (canonicalized) with the given algorithm.
    pub fn build(sig: OrderSignature, n_max: u32, algorithm: Algorithm) -> Result<Self> {
        require_positive_n(n_max, "triangle")?;
        let sig = sig.canonical();
        match algorithm {
            Algorithm::Recurrence => {
                if !sig.is_diagonal() {
                    return Err(Error::InvalidArgument(format!(
                        "the recurrence only covers r = s, got {sig}"
                    )));
                }
                Ok(stirling_diag_recurrence(sig.r, n_max))
            }
            Algorithm::Sum => {
                let rows = (1..=n_max)
                    .map(|n| stirling_sum_row(sig, n))
                    .collect::<Result<_>>()?;
                Ok(StirlingTriangle {
                    signature: sig,
                    n_max,
                    rows,
                })
            }
            Algorithm::Operator => {
                let rows = (1..=n_max)
                    .map(|n| {
                        (sig.s..=n * sig.s)
                            .map(|k| stirling_operator(sig, n, k as i64))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                Ok(StirlingTriangle {
                    signature: sig,
                    n_max,
                    rows,
                })
            }
        }
    }

    pub fn signature(&self) -> OrderSignature {
        self.signature
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// Entries `k = s..=ns` of row `n` (`1 <= n <= n_max`).
    pub fn row(&self, n: u32) -> &[ExactInt] {
        &self.rows[(n - 1) as usize]
    }

    pub fn k_range(&self, n: u32) -> std::ops::RangeInclusive<u32> {
        self.signature.s..=n * self.signature.s
    }

    /// `S(n, k)` with zero outside the support and `S(0, 0) = 1`.
    pub fn get(&self, n: u32, k: i64) -> ExactInt {
        if n == 0 {
            return if k == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let s = self.signature.s as i64;
        if n > self.n_max || k < s || k > n as i64 * s {
            return BigInt::zero();
        }
        self.rows[(n - 1) as usize][(k - s) as usize].clone()
    }

    pub fn row_sum(&self, n: u32) -> ExactInt {
        self.row(n).iter().sum()
    }

    /// Checks that every stored entry is a strictly positive integer.
    pub fn check_positive(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_positive() {
                    return Err(Error::InvalidArgument(format!(
                        "S{}({}, {}) = {v} is not positive",
                        self.signature,
                        i + 1,
                        j as u32 + self.signature.s
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Triangle for `(r, r)` from `S_{r,r}(1, r) = 1` and the row recurrence
/// `S(n+1, k) = sum_{p=0}^{r} C(k+p-r, p) r^(p) S(n, k+p-r)`.
pub fn stirling_diag_recurrence(r: u32, n_max: u32) -> StirlingTriangle {
    assert!(r >= 1 && n_max >= 1);
    let sig = OrderSignature::of(r, r);
    let mut rows: Vec<Vec<ExactInt>> = vec![vec![BigInt::one()]];
    for n in 1..n_max {
        let prev = &rows[(n - 1) as usize];
        let get = |k: i64| -> ExactInt {
            let lo = r as i64;
            let hi = (n * r) as i64;
            if k < lo || k > hi {
                BigInt::zero()
            } else {
                prev[(k - lo) as usize].clone()
            }
        };
        let next = (r..=(n + 1) * r)
            .map(|k| {
                (0..=r)
                    .map(|p| {
                        let idx = k as i64 + p as i64 - r as i64;
                        let prev_val = get(idx);
                        if prev_val.is_zero() {
                            return BigInt::zero();
                        }
                        binomial(idx as u64, p as i64)
                            * falling_factorial_i64(r as i64, p)
                            * prev_val
                    })
                    .sum()
            })
            .collect();
        rows.push(next);
    }
    StirlingTriangle {
        signature: sig,
        n_max,
        rows,
    }
}

/// `S_{r,s}(n,k)` for any signature and `n >= 0`.
pub fn stirling(sig: OrderSignature, n: u32, k: i64) -> ExactInt {
    if n == 0 {
        return if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    stirling_sum(sig.canonical(), n, k).unwrap_or_else(|e| panic!("{e}"))
}

/// Anti-Stirling number: coefficient in the normal form of `[a^s (a†)^r]^n`,
/// obtained from `S(n+1, k + min(r,s))` of the canonical signature.
pub fn anti_stirling(sig: OrderSignature, n: u32, k: i64) -> ExactInt {
    let canon = sig.canonical();
    if k < 0 {
        return BigInt::zero();
    }
    stirling(canon, n + 1, k + canon.s as i64)
}

/// Generalized Bell number `B_{r,s}(n)`; `B_{r,s}(0) = 1`.
pub fn bell(sig: OrderSignature, n: u32) -> ExactInt {
    if n == 0 {
        return BigInt::one();
    }
    stirling_sum_row(sig.canonical(), n)
        .unwrap_or_else(|e| panic!("{e}"))
        .iter()
        .sum()
}

/// `B_{r,s}(n, t) = sum_k S_{r,s}(n,k) t^k`.
pub fn bell_poly(sig: OrderSignature, n: u32, t: &ExactRat) -> ExactRat {
    if n == 0 {
        return ExactRat::one();
    }
    let canon = sig.canonical();
    let row = stirling_sum_row(canon, n).unwrap_or_else(|e| panic!("{e}"));
    // Horner over k = s..=ns, then multiply by t^s
    let poly = row
        .iter()
        .rev()
        .fold(ExactRat::zero(), |acc, c| acc * t + rat_int(c));
    poly * rat_pow(t, canon.s)
}

/// Anti-Bell number, `B_{r,s}(n+1)`.
pub fn anti_bell(sig: OrderSignature, n: u32) -> ExactInt {
    bell(sig, n + 1)
}

/// Row sum of the anti-Stirling numbers, computed entry by entry.
pub fn anti_bell_by_sum(sig: OrderSignature, n: u32) -> ExactInt {
    let canon = sig.canonical();
    (0..=(n * canon.s) as i64)
        .map(|k| anti_stirling(sig, n, k))
        .sum()
}

/// Outcome of an exact identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }

    /// Compares two equal-length sequences position by position.
    pub fn compare<T: PartialEq + fmt::Display>(
        pairs: impl IntoIterator<Item = (i64, T, T)>,
    ) -> Self {
        let mut checked = 0;
        for (index, lhs, rhs) in pairs {
            checked += 1;
            if lhs != rhs {
                return IdentityReport {
                    checked,
                    first_mismatch: Some(Mismatch {
                        index,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    }),
                };
            }
        }
        IdentityReport {
            checked,
            first_mismatch: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int::{int, rat};

    const fn sig(r: u32, s: u32) -> OrderSignature {
        OrderSignature::of(r, s)
    }

    #[test]
    fn signature_validation() {
        assert!(OrderSignature::new(0, 1).is_err());
        assert_eq!(sig(1, 3).canonical(), sig(3, 1));
        assert_eq!(sig(1, 3).k_max(4), 4);
    }

    #[test]
    fn stirling_sum_examples() {
        assert_eq!(stirling_sum(sig(2, 1), 4, 2).unwrap(), int(36));
        assert_eq!(stirling_sum(sig(3, 2), 2, 2).unwrap(), int(6));
        assert_eq!(stirling_sum(sig(1, 1), 1, 1).unwrap(), int(1));
        assert_eq!(stirling_sum(sig(3, 2), 2, 5).unwrap(), int(0));
        assert_eq!(stirling_sum(sig(3, 2), 2, 1).unwrap(), int(0));
        assert!(stirling_sum(sig(1, 2), 2, 1).is_err());
        assert!(stirling_sum(sig(2, 1), 0, 0).is_err());
    }

    #[test]
    fn stirling_operator_examples() {
        assert_eq!(stirling_operator(sig(1, 1), 1, 1).unwrap(), int(1));
        assert_eq!(stirling_operator(sig(2, 2), 3, 3).unwrap(), int(32));
        assert_eq!(stirling_operator(sig(3, 2), 3, 4).unwrap(), int(96));
        // no short-circuit: vanishing outside the support is computed
        assert_eq!(stirling_operator(sig(3, 2), 2, 7).unwrap(), int(0));
        assert_eq!(stirling_operator(sig(2, 2), 2, 1).unwrap(), int(0));
    }

    #[test]
    fn recurrence_examples() {
        let t = stirling_diag_recurrence(1, 6);
        assert_eq!(t.row(5), &[int(1), int(15), int(25), int(10), int(1)]);
        let t = stirling_diag_recurrence(2, 4);
        let want: Vec<_> = [8, 208, 652, 576, 188, 24, 1]
            .iter()
            .map(|&v| int(v))
            .collect();
        assert_eq!(t.row(4), want.as_slice());
    }

    #[test]
    fn recurrence_r1_is_classical_rule() {
        let t = stirling_diag_recurrence(1, 9);
        for n in 1..9u32 {
            for k in 1..=(n + 1) as i64 {
                let want = int(k) * t.get(n, k) + t.get(n, k - 1);
                assert_eq!(t.get(n + 1, k), want);
            }
        }
    }

    #[test]
    fn dispatcher_examples() {
        assert_eq!(stirling(sig(1, 2), 2, 1), int(2));
        assert_eq!(stirling(sig(3, 1), 0, 0), int(1));
        assert_eq!(stirling(sig(3, 1), 0, 2), int(0));
        assert_eq!(stirling(sig(2, 1), 3, 5), int(0));
    }

    #[test]
    fn anti_stirling_examples() {
        assert_eq!(anti_stirling(sig(1, 1), 1, 0), int(1));
        assert_eq!(anti_stirling(sig(1, 1), 1, 1), int(1));
        assert_eq!(anti_stirling(sig(2, 1), 1, 1), int(1));
        assert_eq!(anti_stirling(sig(2, 1), 1, 0), int(2));
        assert_eq!(anti_stirling(sig(2, 2), 1, 2), int(1));
        assert_eq!(
            anti_stirling(sig(1, 2), 1, 0),
            anti_stirling(sig(2, 1), 1, 0)
        );
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell(sig(3, 2), 4), int(16333));
        assert_eq!(bell(sig(2, 2), 5), int(43833));
        assert_eq!(bell(sig(4, 3), 0), int(1));
        assert_eq!(anti_bell(sig(1, 1), 1), int(2));
        assert_eq!(anti_bell(sig(2, 1), 2), int(13));
        assert_eq!(anti_bell(sig(2, 2), 1), int(7));
        assert_eq!(anti_bell_by_sum(sig(2, 2), 1), int(7));
    }

    #[test]
    fn bell_poly_examples() {
        assert_eq!(bell_poly(sig(1, 1), 2, &rat(2, 1)), rat(6, 1));
        assert_eq!(bell_poly(sig(3, 2), 3, &rat(1, 1)), rat(355, 1));
        assert_eq!(bell_poly(sig(2, 1), 4, &rat(0, 1)), rat(0, 1));
        // 1 t^2 + 6 t^3 + ... check a rational point by brute force
        let t = rat(-2, 3);
        let direct: ExactRat = (2..=4i64)
            .map(|k| rat_int(&stirling(sig(3, 2), 2, k)) * rat_pow(&t, k as u32))
            .sum();
        assert_eq!(bell_poly(sig(3, 2), 2, &t), direct);
    }

    #[test]
    fn triangle_rejects_recurrence_off_diagonal() {
        assert!(StirlingTriangle::build(sig(3, 2), 3, Algorithm::Recurrence).is_err());
        let t = StirlingTriangle::build(sig(2, 3), 3, Algorithm::Sum).unwrap();
        assert_eq!(t.signature(), sig(3, 2));
        assert_eq!(t.row_sum(3), int(355));
        t.check_positive().unwrap();
    }
}
