//! Self-check suites run by `bosonorder verify`.
//!
//! Every check carries a short dotted tag naming the identity it exercises.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::boson::{
    antinormal_power, antinormal_word_from_power, normal_order_power, normal_order_word,
    word_from_power, WordCap,
};
use crate::error::{Error, Result};
use crate::genfun::{
    b31_check, bell_egf_partial_sum, egf_bell_diag_numeric, egf_classical_numeric, egf_diag,
    egf_r1, hgf_32, kummer_bell_check, laguerre_bell_check,
};
use crate::stirling::{
    bell, dobinski_bell_numeric, dobinski_series_identity, gamma_form_bell_numeric, stirling,
    Algorithm, IdentityReport, OrderSignature, StirlingTriangle,
};

/// A printed triangle `S_{r,s}(n, k)`, `n = 1..=6`, `k = s..=ns`, with row sums.
#[derive(Debug, Clone, Copy)]
pub struct GoldenTriangle {
    pub r: u32,
    pub s: u32,
    pub rows: &'static [&'static [u64]],
    pub sums: &'static [u64],
}

impl GoldenTriangle {
    pub fn signature(&self) -> OrderSignature {
        OrderSignature::of(self.r, self.s)
    }
}

pub const GOLDEN_TRIANGLES: [GoldenTriangle; 4] = [
    GoldenTriangle {
        r: 1,
        s: 1,
        rows: &[
            &[1],
            &[1, 1],
            &[1, 3, 1],
            &[1, 7, 6, 1],
            &[1, 15, 25, 10, 1],
            &[1, 31, 90, 65, 15, 1],
        ],
        sums: &[1, 2, 5, 15, 52, 203],
    },
    GoldenTriangle {
        r: 2,
        s: 1,
        rows: &[
            &[1],
            &[2, 1],
            &[6, 6, 1],
            &[24, 36, 12, 1],
            &[120, 240, 120, 20, 1],
            &[720, 1800, 1200, 300, 30, 1],
        ],
        sums: &[1, 3, 13, 73, 501, 4051],
    },
    GoldenTriangle {
        r: 2,
        s: 2,
        rows: &[
            &[1],
            &[2, 4, 1],
            &[4, 32, 38, 12, 1],
            &[8, 208, 652, 576, 188, 24, 1],
            &[16, 1280, 9080, 16944, 12052, 3840, 580, 40, 1],
            &[
                32, 7744, 116656, 412800, 540080, 322848, 98292, 16000, 1390, 60, 1,
            ],
        ],
        sums: &[1, 7, 87, 1657, 43833, 1515903],
    },
    GoldenTriangle {
        r: 3,
        s: 2,
        rows: &[
            &[1],
            &[6, 6, 1],
            &[72, 168, 96, 18, 1],
            &[1440, 5760, 6120, 2520, 456, 36, 1],
            &[43200, 259200, 424800, 285120, 92520, 15600, 1380, 60, 1],
            &[
                1814400, 15120000, 34776000, 33566400, 16304400, 4379760, 682200, 62400, 3270, 90,
                1,
            ],
        ],
        sums: &[1, 13, 355, 16333, 1121881, 106708921],
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Dobinski,
    Genfun,
    Oracle,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Dobinski => "dobinski",
            Suite::Genfun => "genfun",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(Suite::Table1),
            "dobinski" => Ok(Suite::Dobinski),
            "genfun" => Ok(Suite::Genfun),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected table1, dobinski, genfun, oracle or all"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub tag: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(
        name: impl Into<String>,
        tag: &'static str,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            tag,
            passed,
            detail: detail.into(),
        }
    }

    fn from_report(
        name: impl Into<String>,
        tag: &'static str,
        report: Result<IdentityReport>,
    ) -> Self {
        match report {
            Ok(r) => match &r.first_mismatch {
                None => Check::new(name, tag, true, format!("{} values agree", r.checked)),
                Some(m) => Check::new(
                    name,
                    tag,
                    false,
                    format!("mismatch at {}: {} vs {}", m.index, m.lhs, m.rhs),
                ),
            },
            Err(e) => Check::new(name, tag, false, e.to_string()),
        }
    }

    fn from_rel_err(
        name: impl Into<String>,
        tag: &'static str,
        err: Result<f64>,
        tol: f64,
    ) -> Self {
        match err {
            Ok(e) => Check::new(
                name,
                tag,
                e <= tol,
                format!("relative error {e:.3e} (tol {tol:e})"),
            ),
            Err(e) => Check::new(name, tag, false, e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Sorted, de-duplicated tags of all checks.
    pub fn tags(&self) -> Vec<&'static str> {
        let mut tags: Vec<_> = self.checks.iter().map(|c| c.tag).collect();
        tags.sort_unstable();
        tags.dedup();
        tags
    }
}

pub fn run_suite(suite: Suite) -> VerifyReport {
    let checks = match suite {
        Suite::Table1 => table1_checks(),
        Suite::Dobinski => dobinski_checks(),
        Suite::Genfun => genfun_checks(),
        Suite::Oracle => oracle_checks(),
        Suite::All => [
            table1_checks(),
            dobinski_checks(),
            genfun_checks(),
            oracle_checks(),
        ]
        .concat(),
    };
    VerifyReport { suite, checks }
}

fn ints(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// One row check and one row-sum check per printed row.
pub fn table1_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for g in GOLDEN_TRIANGLES {
        let sig = g.signature();
        let tri = StirlingTriangle::build(sig, 6, Algorithm::Sum);
        for n in 1..=6u32 {
            let want = ints(g.rows[(n - 1) as usize]);
            let name = format!("S{sig} row {n}");
            match &tri {
                Ok(t) => {
                    let got = t.row(n).to_vec();
                    let detail = if got == want {
                        join(&got)
                    } else {
                        format!("got {} want {}", join(&got), join(&want))
                    };
                    out.push(Check::new(name, "stirling.triangle", got == want, detail));
                }
                Err(e) => out.push(Check::new(name, "stirling.triangle", false, e.to_string())),
            }
        }
        for n in 1..=6u32 {
            let want = BigInt::from(g.sums[(n - 1) as usize]);
            let got = bell(sig, n);
            out.push(Check::new(
                format!("B{sig}({n})"),
                "bell.row_sum",
                got == want,
                format!("got {got} want {want}"),
            ));
        }
    }
    out
}

fn canonical_signatures(max: u32) -> impl Iterator<Item = OrderSignature> {
    (1..=max).flat_map(move |r| (1..=r).map(move |s| OrderSignature::of(r, s)))
}

pub fn dobinski_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for sig in canonical_signatures(3) {
        for n in 1..=5 {
            let order = (n * sig.s + 8) as usize;
            out.push(Check::from_report(
                format!("Dobinski series identity {sig} n={n}"),
                "dobinski.series",
                dobinski_series_identity(sig, n, order),
            ));
        }
    }
    for sig in canonical_signatures(3) {
        for n in 1..=6 {
            let exact = bell(sig, n);
            let err = dobinski_bell_numeric(sig, n, 1e-12).map(|a| a.rel_err(int_f64(&exact)));
            out.push(Check::from_rel_err(
                format!("Dobinski sum B{sig}({n})"),
                "dobinski.numeric",
                err,
                1e-9,
            ));
            if sig.r > sig.s {
                let err =
                    gamma_form_bell_numeric(sig, n, 1e-12).map(|a| a.rel_err(int_f64(&exact)));
                out.push(Check::from_rel_err(
                    format!("gamma form B{sig}({n})"),
                    "dobinski.gamma",
                    err,
                    1e-8,
                ));
            }
        }
    }
    out
}

fn int_f64(v: &BigInt) -> f64 {
    crate::kernel::int::int_to_f64(v)
}

fn extraction_check(
    name: String,
    tag: &'static str,
    scaled: Result<Vec<BigInt>>,
    sig: OrderSignature,
    k: u32,
) -> Check {
    let report = scaled.map(|coeffs| {
        IdentityReport::compare(
            coeffs
                .into_iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| (n as i64, c, stirling(sig, n as u32, k as i64))),
        )
    });
    Check::from_report(name, tag, report)
}

pub fn genfun_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for r in 1..=2 {
        for k in r..=6 {
            out.push(extraction_check(
                format!("diagonal egf column r={r} k={k}"),
                "egf.diagonal",
                egf_diag(r, k, 8).and_then(|e| e.scaled_coefficients()),
                OrderSignature::of(r, r),
                k,
            ));
        }
    }
    for r in 2..=3 {
        for k in 1..=4 {
            out.push(extraction_check(
                format!("egf column r={r} s=1 k={k}"),
                "egf.r1",
                egf_r1(r, k, 8).and_then(|e| e.scaled_coefficients()),
                OrderSignature::of(r, 1),
                k,
            ));
        }
    }
    for lambda in [-0.5, -0.25, 0.0, 0.25, 0.5] {
        let err = egf_bell_diag_numeric(1, lambda, 1e-13)
            .map(|v| v.rel_err(egf_classical_numeric(lambda).value));
        out.push(Check::from_rel_err(
            format!("coherent egf r=1 lambda={lambda}"),
            "egf.coherent_classical",
            err,
            1e-9,
        ));
    }
    let partial = bell_egf_partial_sum(OrderSignature::of(2, 2), 0.05, 20);
    out.push(Check::from_rel_err(
        "coherent egf r=2 lambda=0.05 vs Bell partial sum (N=20)",
        "egf.coherent_diagonal",
        egf_bell_diag_numeric(2, 0.05, 1e-13).map(|v| v.rel_err(partial)),
        1e-8,
    ));
    for n in 1..=8 {
        let name = format!("Laguerre form B(2, 1)({n})");
        match laguerre_bell_check(n, 1e-13) {
            Ok(c) => {
                out.push(Check::new(
                    name,
                    "hypergeometric.laguerre",
                    c.laguerre_matches(),
                    format!("laguerre {} exact {}", c.laguerre, c.exact),
                ));
                if n <= 4 {
                    out.push(Check::from_rel_err(
                        format!("Kummer form B(2, 1)({n})"),
                        "hypergeometric.kummer",
                        Ok(c.kummer_rel_err()),
                        1e-8,
                    ));
                }
            }
            Err(e) => out.push(Check::new(
                name,
                "hypergeometric.laguerre",
                false,
                e.to_string(),
            )),
        }
    }
    for r in 1..=2 {
        for n in 1..=4 {
            out.push(Check::from_rel_err(
                format!("Kummer form B({}, {r})({n})", 2 * r),
                "hypergeometric.kummer",
                kummer_bell_check(r, n, 1e-13).map(|c| c.rel_err()),
                1e-8,
            ));
        }
    }
    for n in 1..=4 {
        out.push(Check::from_rel_err(
            format!("1F2 form B(3, 1)({n})"),
            "hypergeometric.b31",
            b31_check(n, 1e-12).map(|c| c.rel_err()),
            1e-6,
        ));
    }
    for lambda in [0.1, 0.25] {
        out.push(Check::from_rel_err(
            format!("hgf of B(3, 2) dual evaluation lambda={lambda}"),
            "hypergeometric.hgf32",
            hgf_32(lambda, 1e-10).map(|h| h.dual_rel_err()),
            1e-6,
        ));
    }
    let name = "hgf of B(3, 2) constant term (reported)";
    out.push(match hgf_32(0.0, 1e-10) {
        Ok(h) => Check::new(
            name,
            "hypergeometric.hgf32",
            true,
            format!(
                "series form {:.12}, B(0) = 1 convention {:.12}, offset {:.12}",
                h.pfq_form.value,
                h.partial_convention.value,
                h.normalization_offset()
            ),
        ),
        Err(e) => Check::new(name, "hypergeometric.hgf32", false, e.to_string()),
    });
    out
}

pub fn oracle_checks() -> Vec<Check> {
    let cap = WordCap::DEFAULT;
    let mut out = Vec::new();
    for r in 1..=3 {
        for s in 1..=3 {
            let sig = OrderSignature::of(r, s);
            for n in 1..=4 {
                let check = |tag, word: Result<_>, fast| {
                    let name = format!("{tag} {sig} n={n}");
                    match word.and_then(|w| normal_order_word(&w, cap)) {
                        Ok(p) if p == fast => {
                            Check::new(name, tag, true, format!("{} terms", p.len()))
                        }
                        Ok(p) => {
                            Check::new(name, tag, false, format!("oracle {p} vs formula {fast}"))
                        }
                        Err(e) => Check::new(name, tag, false, e.to_string()),
                    }
                };
                out.push(check(
                    "oracle.normal",
                    word_from_power(sig, n, cap),
                    normal_order_power(sig, n),
                ));
                out.push(check(
                    "oracle.antinormal",
                    antinormal_word_from_power(sig, n, cap),
                    antinormal_power(sig, n),
                ));
            }
        }
    }
    out
}
