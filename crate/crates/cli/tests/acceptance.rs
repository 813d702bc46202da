//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use nilquat::report::{Report, Status};
use nilquat::suites::{self, DEFAULT_SEED};

struct Outcome {
    ok: bool,
    detail: String,
}

/// Checks whose id starts with one of `prefixes`, across the given reports.
fn select<'a>(reports: &'a [Report], prefixes: &[&str]) -> Vec<(usize, &'a nilquat::report::Check)> {
    reports
        .iter()
        .flat_map(|r| r.checks.iter().map(move |c| (r.m, c)))
        .filter(|(_, c)| prefixes.iter().any(|p| c.id.starts_with(p)))
        .collect()
}

fn judge(reports: &[Report], prefixes: &[&str], elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let checks = select(reports, prefixes);
    let failed: Vec<String> = checks
        .iter()
        .filter(|(_, c)| c.status == Status::Fail)
        .map(|(m, c)| format!("m={m} {} ({})", c.id, c.detail))
        .collect();
    let slow = limit.is_some_and(|l| elapsed > l);
    let mut detail = format!("{} checks, {:.2} s", checks.len(), elapsed.as_secs_f64());
    if let Some(l) = limit {
        detail += &format!(" (limit {} s)", l.as_secs());
    }
    if !failed.is_empty() {
        detail += &format!("; failed: {}", failed.join("; "));
    }
    Outcome {
        ok: !checks.is_empty() && failed.is_empty() && !slow,
        detail,
    }
}

/// Runs `f` for each m and returns the reports with the slowest single-m time.
fn per_m(ms: &[usize], f: impl Fn(usize) -> Report) -> (Vec<Report>, Duration) {
    let mut worst = Duration::ZERO;
    let reports = ms
        .iter()
        .map(|&m| {
            let t0 = Instant::now();
            let r = f(m);
            worst = worst.max(t0.elapsed());
            r
        })
        .collect();
    (reports, worst)
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn criterion_1() -> Outcome {
    let (r, t) = per_m(&[1, 2, 3, 4], suites::algebra);
    judge(&r, &["algebra."], t, secs(1))
}

fn criterion_2() -> Outcome {
    let (r, t) = per_m(&[1, 2, 3, 4], suites::hypercomplex);
    judge(&r, &["hypercomplex."], t, secs(5))
}

fn criterion_3() -> Outcome {
    let (r, t) = per_m(&[1, 2, 3], |m| suites::coords(m, DEFAULT_SEED));
    judge(&r, &["coords."], t, secs(10))
}

fn twistor_reports() -> (Vec<Report>, Duration) {
    per_m(&[1, 2], |m| suites::twistor(m, DEFAULT_SEED))
}

fn criterion_4(r: &[Report], t: Duration) -> Outcome {
    judge(r, &["twistor.numeric.", "twistor.dbar.", "twistor.dbar_squared"], t, None)
}

fn criterion_5(r: &[Report], t: Duration) -> Outcome {
    judge(r, &["twistor.closure.", "twistor.zero.", "twistor.e_closed"], t, secs(120))
}

fn criterion_6() -> Outcome {
    let (r, t) = per_m(&[1, 2, 3, 4], suites::cohomology);
    judge(
        &r,
        &[
            "cohomology.h1_w_d",
            "cohomology.split",
            "cohomology.delta0",
            "cohomology.coker_display",
            "cohomology.ker_delta1",
            "cohomology.h1_w_theta",
            "cohomology.torus",
        ],
        t,
        secs(30),
    )
}

fn criterion_7() -> Outcome {
    let (r, t) = per_m(&[1, 2], suites::cohomology);
    judge(
        &r,
        &["cohomology.delta0_twistor", "cohomology.delta1_twistor", "cohomology.quaternionic_twistor"],
        t,
        None,
    )
}

fn criterion_8() -> Outcome {
    let (r, t) = per_m(&[1, 2], |m| suites::mc(m, DEFAULT_SEED));
    let samples = select(&r, &["mc.phi"]).iter().filter(|(_, c)| c.id.ends_with(".residual")).count();
    let mut o = judge(&r, &["mc."], t, secs(180));
    if samples < 10 {
        o.ok = false;
        o.detail += &format!("; only {samples} random φ₁ across m = 1, 2");
    }
    o
}

fn criterion_9() -> Outcome {
    let (r, t) = per_m(&[1, 2, 3, 4], |m| suites::aut(m, DEFAULT_SEED));
    judge(
        &r,
        &["aut.dim_g", "aut.dim_h", "aut.effective", "aut.random_prop2", "aut.gap_formula", "aut.gap_computed"],
        t,
        None,
    )
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_nilquat"))
            .args(["verify", "--m", "2", "--suite", "all", "--format", "json", "--seed"])
            .arg(DEFAULT_SEED.to_string())
            .env_remove("NILQUAT_SEED")
            .output()
            .expect("spawn nilquat")
    };
    let a = run();
    let b = run();
    let same = a.stdout == b.stdout;
    let parsed = serde_json::from_slice::<Report>(&a.stdout).is_ok();
    Outcome {
        ok: same && parsed && !a.stdout.is_empty(),
        detail: format!(
            "{} bytes, identical = {same}, valid report = {parsed}, exit codes {:?}/{:?}",
            a.stdout.len(),
            a.status.code(),
            b.status.code()
        ),
    }
}

fn main() {
    let (tw, tw_t) = twistor_reports();
    let results: Vec<(&str, Outcome)> = vec![
        ("algebra (m = 1..4)", criterion_1()),
        ("hypercomplex (m = 1..4)", criterion_2()),
        ("coordinates (m = 1..3)", criterion_3()),
        ("twistor calculus (m = 1..2)", criterion_4(&tw, tw_t)),
        ("bracket closure (m = 1 full, m = 2 sampled)", criterion_5(&tw, tw_t)),
        ("cohomology (m = 1..4)", criterion_6()),
        ("coboundary cross-validation (m = 1..2)", criterion_7()),
        ("Maurer-Cartan series (m = 1..2, N = 6)", criterion_8()),
        ("automorphism counts (m = 1..4)", criterion_9()),
        ("determinism of verify --m 2 --suite all", criterion_10()),
    ];
    let mut failed = 0;
    for (n, (name, o)) in results.iter().enumerate() {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name}: {}", n + 1, o.detail);
        failed += !o.ok as usize;
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
