use std::fmt::Write;

use bosonorder::boson::{
    coherent_expectation, coherent_expectation_exact, normal_order_power, normal_order_terms,
    CoherentPoint, NormalPolynomial, WordCap,
};
use bosonorder::expr::{lower, parse_expression, signature_power};
use bosonorder::genfun::{egf_diag, egf_r1, hgf_32};
use bosonorder::stirling::{bell, stirling, Algorithm, OrderSignature, StirlingTriangle};
use bosonorder::verify::{run_suite, Suite};
use bosonorder::{Error, Result};
use serde_json::{json, Value};

use crate::complex::{parse_complex, ComplexArg};
use crate::report::{approx_json, int_json, Report};

const TAG_SUM: (&str, &str) = (
    "stirling.alternating_sum",
    "S_{r,s}(n,k) = ((-1)^k/k!) sum_p (-1)^p C(k,p) prod_j (p + (j-1)(r-s))^(s)",
);
const TAG_OPERATOR: (&str, &str) = (
    "stirling.operator_form",
    "S_{r,s}(n,k) from (x^r d^s/dx^s)^n applied to a degree-k polynomial at x = 1",
);
const TAG_RECURRENCE: (&str, &str) = (
    "stirling.diagonal_recurrence",
    "S_{r,r}(n+1,k) = sum_p C(k+p-r, p) r^(p) S_{r,r}(n, k+p-r)",
);
const TAG_BELL: (&str, &str) = ("bell.row_sum", "B_{r,s}(n) = sum_k S_{r,s}(n,k)");
const TAG_NORMAL_FORM: (&str, &str) = (
    "boson.normal_form",
    "[(a†)^r a^s]^n = (a†)^{n(r-s)} sum_k S_{r,s}(n,k) (a†)^k a^k for r >= s, mirrored for r < s",
);
const TAG_REWRITE: (&str, &str) = (
    "boson.commutator_rewriting",
    "repeated rewriting a a† -> a† a + 1",
);
const TAG_COHERENT: (&str, &str) = ("coherent.expectation", "<z| (a†)^i a^j |z> = conj(z)^i z^j");

fn signature(r: u32, s: u32) -> Result<OrderSignature> {
    OrderSignature::new(r, s)
}

fn row_text(values: &[bosonorder::kernel::ExactInt]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// `algorithm` is `None` for "all available algorithms".
pub fn triangle(r: u32, s: u32, n_max: u32, algorithm: Option<Algorithm>) -> Result<Report> {
    let sig = signature(r, s)?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("--nmax must be at least 1".into()));
    }
    let canonical = sig.canonical();
    let algorithms: Vec<Algorithm> = match algorithm {
        Some(Algorithm::Recurrence) if !canonical.is_diagonal() => {
            return Err(Error::InvalidArgument(format!(
                "the recurrence algorithm needs r = s, got {sig}"
            )))
        }
        Some(a) => vec![a],
        None if canonical.is_diagonal() => Algorithm::ALL.to_vec(),
        None => vec![Algorithm::Sum, Algorithm::Operator],
    };
    let triangles = algorithms
        .iter()
        .map(|&a| StirlingTriangle::build(canonical, n_max, a))
        .collect::<Result<Vec<_>>>()?;

    let mut report = Report::new("triangle");
    report
        .param("r", int_json(r))
        .param("s", int_json(s))
        .param("n_max", int_json(n_max))
        .param("algorithm", algorithm.map_or("all", Algorithm::name));
    for a in &algorithms {
        let (tag, text) = match a {
            Algorithm::Sum => TAG_SUM,
            Algorithm::Operator => TAG_OPERATOR,
            Algorithm::Recurrence => TAG_RECURRENCE,
        };
        report.cite(tag, text);
    }
    report.cite(TAG_BELL.0, TAG_BELL.1);
    if canonical != sig {
        report.cite("stirling.symmetry", "S_{r,s}(n,k) = S_{s,r}(n,k)");
    }

    let first = &triangles[0];
    if let Some((i, _)) = triangles
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, t)| *t != first)
    {
        report.failed = true;
        report.results = json!({
            "agree": false,
            "algorithms": algorithms.iter().map(|a| a.name()).collect::<Vec<_>>(),
            "mismatch": [algorithms[0].name(), algorithms[i].name()],
        });
        report.text = format!(
            "algorithms {} and {} disagree for S{sig}; no triangle printed",
            algorithms[0].name(),
            algorithms[i].name()
        );
        return Ok(report);
    }

    let mut rows = Vec::new();
    let mut text = format!(
        "S{sig}(n, k) for k = {}..{}n; row sum B{sig}(n) after '|'\n",
        canonical.s, canonical.s
    );
    if triangles.len() > 1 {
        let names: Vec<_> = algorithms.iter().map(|a| a.name()).collect();
        writeln!(text, "algorithms agree: {}", names.join(", ")).unwrap();
    }
    for n in 1..=n_max {
        let row = first.row(n);
        let sum = first.row_sum(n);
        let k_range = first.k_range(n);
        writeln!(text, "n={n}: {} | {sum}", row_text(row)).unwrap();
        for (k, v) in k_range.clone().zip(row) {
            report
                .csv_rows
                .push(vec![n.to_string(), k.to_string(), v.to_string()]);
        }
        rows.push(json!({
            "n": int_json(n),
            "k_min": int_json(k_range.start()),
            "k_max": int_json(k_range.end()),
            "values": row.iter().map(int_json).collect::<Vec<_>>(),
            "sum": int_json(&sum),
        }));
    }
    report.csv_header = vec!["n", "k", "value"];
    report.results = json!({
        "agree": true,
        "algorithms": algorithms.iter().map(|a| a.name()).collect::<Vec<_>>(),
        "signature": canonical.to_string(),
        "rows": rows,
    });
    report.text = text;
    Ok(report)
}

pub fn bell_cmd(r: u32, s: u32, n: u32) -> Result<Report> {
    let sig = signature(r, s)?;
    let value = bell(sig, n);
    let mut report = Report::new("bell");
    report
        .param("r", int_json(r))
        .param("s", int_json(s))
        .param("n", int_json(n))
        .cite(TAG_SUM.0, TAG_SUM.1)
        .cite(TAG_BELL.0, TAG_BELL.1);
    report.results = json!({ "value": int_json(&value) });
    report.text = value.to_string();
    report.csv_header = vec!["n", "value"];
    report.csv_rows = vec![vec![n.to_string(), value.to_string()]];
    Ok(report)
}

/// Normal form of `src`, by the closed formula when `src` is a plain
/// `((a†)^r a^s)^n` and by commutator rewriting otherwise.
fn normal_form(src: &str, cap: WordCap, report: &mut Report) -> Result<NormalPolynomial> {
    let ast = parse_expression(src)?;
    if let Some((sig, n)) = signature_power(&ast) {
        report.cite(TAG_NORMAL_FORM.0, TAG_NORMAL_FORM.1);
        report.param("method", "formula");
        Ok(normal_order_power(sig, n))
    } else {
        report.cite(TAG_REWRITE.0, TAG_REWRITE.1);
        report.param("method", "rewriting");
        normal_order_terms(&lower(&ast, cap)?, cap)
    }
}

pub fn normal_order(src: &str, cap: WordCap) -> Result<Report> {
    let mut report = Report::new("normal-order");
    report.param("expr", src).param("word_cap", int_json(cap.0));
    let p = normal_form(src, cap, &mut report)?;
    let terms: Vec<Value> = p
        .terms()
        .map(|((i, j), c)| json!({ "i": int_json(i), "j": int_json(j), "coefficient": c.to_string() }))
        .collect();
    report.csv_header = vec!["i", "j", "coefficient"];
    report.csv_rows = p
        .terms()
        .map(|((i, j), c)| vec![i.to_string(), j.to_string(), c.to_string()])
        .collect();
    report.results = json!({ "normal_form": p.to_string(), "terms": terms });
    report.text = p.to_string();
    Ok(report)
}

fn format_complex(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{re} {sign} {}i", im.abs())
}

pub fn expect(src: &str, z_text: &str, cap: WordCap) -> Result<Report> {
    let z: ComplexArg = parse_complex(z_text)?;
    let mut report = Report::new("expect");
    report
        .param("expr", src)
        .param("z", z_text)
        .param("word_cap", int_json(cap.0));
    let p = normal_form(src, cap, &mut report)?;
    report.cite(TAG_COHERENT.0, TAG_COHERENT.1);
    if let Some(x) = z.exact_real() {
        let v = coherent_expectation_exact(&p, x);
        report.results = json!({ "exact": true, "value": v.to_string() });
        report.text = v.to_string();
        report.csv_header = vec!["value"];
        report.csv_rows = vec![vec![v.to_string()]];
        return Ok(report);
    }
    let pt = CoherentPoint::new(z.re.to_f64(), z.im.to_f64());
    let v = coherent_expectation(&p, pt);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Domain(format!(
            "expectation overflows at z = {z_text}"
        )));
    }
    // Each term is a product of at most `degree + 1` rounded factors.
    let modulus = pt.z.norm();
    let (magnitude, degree) = p.terms().fold((0.0f64, 0u32), |(m, d), ((i, j), c)| {
        let c = num_traits::ToPrimitive::to_f64(c)
            .unwrap_or(f64::INFINITY)
            .abs();
        (m + c * modulus.powi((i + j) as i32), d.max(i + j))
    });
    let tol = 4.0 * f64::EPSILON * magnitude * f64::from(degree + 2);
    report.results = json!({ "exact": false, "re": v.re, "im": v.im, "tol": tol });
    report.text = format_complex(v.re, v.im);
    report.csv_header = vec!["re", "im", "tol"];
    report.csv_rows = vec![vec![v.re.to_string(), v.im.to_string(), tol.to_string()]];
    Ok(report)
}

#[derive(Debug, Clone, Copy)]
pub enum EgfFamily {
    Diagonal(u32),
    R1(u32),
}

pub fn egf(family: EgfFamily, k: u32, order: usize) -> Result<Report> {
    let (extraction, sig, tag, desc) = match family {
        EgfFamily::Diagonal(r) => (
            egf_diag(r, k, order)?,
            signature(r, r)?,
            "egf.diagonal_column",
            "((-1)^k/k!) sum_{p=r}^{k} (-1)^p C(k,p) (exp(x p^(r)) - 1)",
        ),
        EgfFamily::R1(r) => (
            egf_r1(r, k, order)?,
            signature(r, 1)?,
            "egf.r1_column",
            "(1/k!) [(1 - (r-1)x)^(-1/(r-1)) - 1]^k",
        ),
    };
    let scaled = extraction.scaled_coefficients()?;
    let mut report = Report::new("egf");
    match family {
        EgfFamily::Diagonal(r) => report.param("diag", int_json(r)),
        EgfFamily::R1(r) => report.param("r1", int_json(r)),
    };
    report
        .param("k", int_json(k))
        .param("order", int_json(order))
        .cite(tag, desc)
        .cite(TAG_SUM.0, TAG_SUM.1);

    let mut text = format!("n!·[x^n] of column k = {k}, against S{sig}(n, {k})\n");
    let mut rows = Vec::new();
    let mut all_match = true;
    for (n, c) in scaled.iter().enumerate() {
        let expected = if n == 0 {
            num_traits::Zero::zero()
        } else {
            stirling(sig, n as u32, k as i64)
        };
        let matches = *c == expected;
        all_match &= matches;
        writeln!(
            text,
            "n={n}: {c} {}",
            if matches { "ok" } else { "MISMATCH" }
        )
        .unwrap();
        report
            .csv_rows
            .push(vec![n.to_string(), k.to_string(), c.to_string()]);
        rows.push(json!({
            "n": int_json(n),
            "scaled_coefficient": int_json(c),
            "stirling": int_json(&expected),
            "matches": matches,
        }));
    }
    report.csv_header = vec!["n", "k", "value"];
    report.failed = !all_match;
    report.results = json!({
        "signature": sig.to_string(),
        "matches": all_match,
        "rows": rows,
    });
    report.text = text;
    Ok(report)
}

pub fn hgf32(lambda: f64, tol: f64) -> Result<Report> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let h = hgf_32(lambda, tol)?;
    let mut report = Report::new("hgf32");
    report
        .param("lambda", lambda)
        .param("tol", tol)
        .cite(
            "hypergeometric.hgf32",
            "(1/e) sum_k 2F1(k+2, k+1; 1; lambda) / (k+2)! against sum_n B_{3,2}(n) lambda^n / (n!)^2",
        )
        .cite(TAG_SUM.0, TAG_SUM.1);
    report.results = json!({
        "pfq_form": approx_json(&h.pfq_form),
        "partial_convention": approx_json(&h.partial_convention),
        "partial_series_reading": approx_json(&h.partial_series_reading),
        "dual_rel_err": h.dual_rel_err(),
        "normalization_offset": h.normalization_offset(),
    });
    report.text = format!(
        "pfq form:                      {:.15}\n\
         partial sum, B(0) = (e-2)/e:   {:.15}\n\
         partial sum, B(0) = 1:         {:.15}\n\
         relative gap (matching forms): {:.3e}\n\
         constant-term offset:          {:.15}",
        h.pfq_form.value,
        h.partial_series_reading.value,
        h.partial_convention.value,
        h.dual_rel_err(),
        h.normalization_offset()
    );
    report.csv_header = vec!["quantity", "value", "tol"];
    for (name, a) in [
        ("pfq_form", &h.pfq_form),
        ("partial_series_reading", &h.partial_series_reading),
        ("partial_convention", &h.partial_convention),
    ] {
        report
            .csv_rows
            .push(vec![name.into(), a.value.to_string(), a.tol.to_string()]);
    }
    Ok(report)
}

pub fn verify(suite: Suite) -> Result<Report> {
    let v = run_suite(suite);
    let mut report = Report::new("verify");
    report.param("suite", suite.name());
    for tag in v.tags() {
        let n = v.checks.iter().filter(|c| c.tag == tag).count();
        report.cite(tag, &format!("{n} checks"));
    }
    let failed = v.failures().count();
    let mut text = String::new();
    for c in &v.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(text, "{status} [{}] {}: {}", c.tag, c.name, c.detail).unwrap();
    }
    write!(
        text,
        "{}: {} passed, {failed} failed",
        suite.name(),
        v.checks.len() - failed
    )
    .unwrap();
    report.text = text;
    report.csv_header = vec!["name", "tag", "passed", "detail"];
    report.csv_rows = v
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.tag.into(),
                c.passed.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    report.results = json!({
        "passed": v.passed(),
        "counts": { "passed": int_json(v.checks.len() - failed), "failed": int_json(failed) },
        "checks": v.checks.iter().map(|c| json!({
            "name": c.name,
            "tag": c.tag,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    });
    report.failed = !v.passed();
    Ok(report)
}
