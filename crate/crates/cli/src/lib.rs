//! Command implementations behind the `nilquat` binary. Each command returns
//! an [`Output`] carrying both renderings and the pass/fail verdict.

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use nilquat::automorphisms::{
    is_hypercomplex_automorphism, is_lie_automorphism, is_prop2_form, is_prop3_form, AutError, AutMatrix,
};
use nilquat::cohomology::{assemble_h1_w_d, quaternionic_sequence, torus_dims};
use nilquat::exact_linalg::GaussRat;
use nilquat::hypercomplex::standard_triple;
use nilquat::lie_core::make_heisenberg_ext;
use nilquat::mc_solver::{
    check_holomorphic_projection, check_invariance, mc_residual, norm_growth, solve_mc, DeformationParam, McError,
    MCSeries,
};
use nilquat::report::Report;
use nilquat::suites::{run_suite, DEFAULT_SEED};

pub const SEED_ENV: &str = "NILQUAT_SEED";
pub const MAX_VERIFY_M: usize = 4;
pub const MAX_DIMS_M: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("m must lie in 1..={max}, got {got}")]
    MRange { got: usize, max: usize },
    #[error("bad range {0:?}, expected <a>..<b> or <a>")]
    Range(String),
    #[error("unknown suite {0:?}")]
    Suite(String),
    #[error("{SEED_ENV}={0:?} is not a u64")]
    Seed(String),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error("matrix is for m = {got}, expected m = {want}")]
    MatrixSize { got: usize, want: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Rendered command result.
#[derive(Debug, Clone)]
pub struct Output {
    pub body: String,
    pub ok: bool,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

/// Explicit seed, else `NILQUAT_SEED`, else the default.
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Seed(v)),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn check_m(m: usize, max: usize) -> Result<(), CliError> {
    if (1..=max).contains(&m) {
        Ok(())
    } else {
        Err(CliError::MRange { got: m, max })
    }
}

/// Parses `a..b` (inclusive) or a single `a`.
pub fn parse_m_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Range(s.to_string());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let a = s.trim().parse().map_err(|_| bad())?;
            (a, a)
        }
    };
    if a > b {
        return Err(bad());
    }
    check_m(a, MAX_DIMS_M)?;
    check_m(b, MAX_DIMS_M)?;
    Ok((a, b))
}

fn render(r: &Report, format: Format, elapsed_ms: u128) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => format!("{r}\n  elapsed {elapsed_ms} ms"),
    }
}

pub fn cmd_verify(m: usize, suite: &str, format: Format, seed: u64) -> Result<Output, CliError> {
    check_m(m, MAX_VERIFY_M)?;
    let t0 = Instant::now();
    let r = run_suite(suite, m, seed).ok_or_else(|| CliError::Suite(suite.to_string()))?;
    let ms = t0.elapsed().as_millis();
    Ok(Output {
        body: render(&r, format, ms),
        ok: r.passed(),
    })
}

/// One row of the dimension table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub m: usize,
    pub h1_w_d: usize,
    pub h1_w_theta: usize,
    pub torus: usize,
    pub torus_quaternionic: usize,
}

impl DimsRow {
    pub fn formula(m: usize) -> Self {
        DimsRow {
            m,
            h1_w_d: 6 * m * m + 11 * m + 12,
            h1_w_theta: 6 * m * m + 11 * m + 9,
            torus: 12 * m * m,
            torus_quaternionic: 12 * m * m - 3,
        }
    }

    pub fn enumerated(m: usize) -> Self {
        let q = quaternionic_sequence(m);
        let t = torus_dims(m);
        DimsRow {
            m,
            h1_w_d: assemble_h1_w_d(m).total,
            h1_w_theta: q.h1_w_theta,
            torus: t.h1_z_d,
            torus_quaternionic: t.quaternionic,
        }
    }
}

pub fn cmd_dims(lo: usize, hi: usize, format: Format) -> Result<Output, CliError> {
    check_m(lo, MAX_DIMS_M)?;
    check_m(hi, MAX_DIMS_M)?;
    let mut rows = Vec::new();
    let mut r = Report::new("dims", hi, 0);
    for m in lo..=hi {
        let e = DimsRow::enumerated(m);
        let f = DimsRow::formula(m);
        r.push(
            format!("dims.m{m}"),
            "enumerated dimensions agree with the closed forms",
            e == f,
            format!(
                "({}, {}, {}, {}) vs ({}, {}, {}, {})",
                e.h1_w_d, e.h1_w_theta, e.torus, e.torus_quaternionic, f.h1_w_d, f.h1_w_theta, f.torus,
                f.torus_quaternionic
            ),
        );
        rows.push(e);
    }
    let ok = r.passed();
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({ "rows": rows, "report": r })).unwrap(),
        Format::Text => {
            let mut s = format!(
                "{:>3} {:>10} {:>12} {:>8} {:>10}\n",
                "m", "H1(W,D_W)", "H1(W,Theta)", "torus", "torus_q"
            );
            for row in &rows {
                s += &format!(
                    "{:>3} {:>10} {:>12} {:>8} {:>10}\n",
                    row.m, row.h1_w_d, row.h1_w_theta, row.torus, row.torus_quaternionic
                );
            }
            s + &r.to_string()
        }
    };
    Ok(Output { body, ok })
}

#[derive(Debug, Clone, Serialize)]
struct SeriesTerm {
    order: usize,
    coefficients: Vec<(String, String)>,
    form: String,
}

fn series_terms(s: &MCSeries) -> Vec<SeriesTerm> {
    s.terms
        .iter()
        .zip(&s.coefficients)
        .enumerate()
        .map(|(i, (t, c))| SeriesTerm {
            order: i + 1,
            coefficients: c.iter().map(|(e, g)| (e.to_string(), g.to_string())).collect(),
            form: t.to_string(),
        })
        .collect()
}

pub const NORM_SAMPLES: usize = 64;

pub fn mc_report(phi1: &DeformationParam, m: usize, order: usize, seed: u64) -> Result<(Report, MCSeries), CliError> {
    let s = solve_mc(phi1, m, order)?;
    let mut r = Report::new("mc", m, seed);
    let bad: Vec<usize> = mc_residual(&s)
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(n, _)| *n)
        .collect();
    r.push(
        "mc.residual",
        "∂̄Φ + ½{Φ, Φ} = 0 through order N",
        bad.is_empty(),
        format!("N = {order}, failing orders {bad:?}"),
    );
    r.push("mc.invariance", "every Φ_n lies in Γ⁰⊗E", check_invariance(&s), String::new());
    r.push(
        "mc.holomorphic_projection",
        "every vector slot of Φ is holomorphic",
        check_holomorphic_projection(&s),
        String::new(),
    );
    let ng = norm_growth(&s, NORM_SAMPLES, seed);
    let ratios: Vec<String> = ng
        .ratios
        .iter()
        .map(|x| x.map_or("-".to_string(), |v| format!("{v:.4e}")))
        .collect();
    let norms: Vec<String> = ng.norms.iter().map(|v| format!("{v:.4e}")).collect();
    r.info(
        "mc.norm_growth",
        "sampled sup-norms of Φ_n and successive ratios",
        format!("norms [{}]; ratios [{}]", norms.join(", "), ratios.join(", ")),
    );
    r.sort();
    Ok((r, s))
}

pub fn cmd_mc(m: usize, order: usize, phi1_json: &str, seed: u64, format: Format) -> Result<Output, CliError> {
    check_m(m, MAX_VERIFY_M)?;
    let phi1 = DeformationParam::from_json(phi1_json, m)?;
    let t0 = Instant::now();
    let (r, s) = mc_report(&phi1, m, order, seed)?;
    let ms = t0.elapsed().as_millis();
    let ok = r.passed();
    let terms = series_terms(&s);
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({ "series": terms, "report": r })).unwrap(),
        Format::Text => {
            let mut out = String::new();
            for t in &terms {
                out += &format!("Φ_{} =", t.order);
                if t.coefficients.is_empty() {
                    out += " 0";
                }
                out += "\n";
                for (e, g) in &t.coefficients {
                    out += &format!("    ({g}) · {e}\n");
                }
            }
            out + &render(&r, format, ms)
        }
    };
    Ok(Output { body, ok })
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

/// Predicate values for a matrix; these are reported, not asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutVerdict {
    pub lie_automorphism: bool,
    pub prop2_form: bool,
    pub s0: Option<String>,
    pub hypercomplex: bool,
    pub prop3_form: bool,
}

pub fn classify(a: &AutMatrix) -> AutVerdict {
    let alg = make_heisenberg_ext(a.m).expect("m ≥ 1");
    let t = standard_triple(a.m);
    let s0: Option<GaussRat> = is_prop2_form(a);
    AutVerdict {
        lie_automorphism: is_lie_automorphism(a, &alg),
        prop2_form: s0.is_some(),
        s0: s0.map(|s| s.to_string()),
        hypercomplex: is_hypercomplex_automorphism(a, &t),
        prop3_form: is_prop3_form(a),
    }
}

pub fn cmd_check_aut(m: usize, matrix_json: &str, format: Format) -> Result<Output, CliError> {
    check_m(m, MAX_VERIFY_M)?;
    let a = AutMatrix::from_json(matrix_json)?;
    if a.m != m {
        return Err(CliError::MatrixSize { got: a.m, want: m });
    }
    let v = classify(&a);
    let mut r = Report::new("check-aut", m, 0);
    let yn = |b: bool| if b { "true" } else { "false" };
    r.info("aut.is_lie_automorphism", "preserves the bracket", yn(v.lie_automorphism));
    r.info(
        "aut.is_prop2_form",
        "block form with centre scaled by S₀",
        match &v.s0 {
            Some(s) => format!("true, S₀ = {s}"),
            None => "false".to_string(),
        },
    );
    r.info("aut.is_hypercomplex", "commutes with I1, I2, I3", yn(v.hypercomplex));
    r.info("aut.is_prop3_form", "scalar centre block and quaternionic pattern", yn(v.prop3_form));
    r.sort();
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({ "predicates": v, "report": r })).unwrap(),
        Format::Text => r.to_string(),
    };
    Ok(Output { body, ok: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_m_range("1..3").unwrap(), (1, 3));
        assert_eq!(parse_m_range("2").unwrap(), (2, 2));
        assert!(parse_m_range("3..1").is_err());
        assert!(parse_m_range("0..2").is_err());
        assert!(parse_m_range("1..7").is_err());
        assert!(parse_m_range("x").is_err());
    }

    #[test]
    fn formula_rows() {
        let r = DimsRow::formula(1);
        assert_eq!((r.h1_w_d, r.h1_w_theta, r.torus, r.torus_quaternionic), (29, 26, 12, 9));
        assert_eq!(DimsRow::formula(2).h1_w_d, 58);
    }

    #[test]
    fn identity_classification() {
        let v = classify(&AutMatrix::identity(1));
        assert!(v.lie_automorphism && v.prop2_form && v.hypercomplex && v.prop3_form);
        assert_eq!(v.s0.as_deref(), Some("1"));
    }
}
