//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::panic;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lucat_core::oracles::{catalan_number, gaussian_binomial_at, strip_tiling_poly};
use lucat_core::{
    catalan_via_division, lemma21_check, product_identity_check, selftest, sweep, Check,
    Lucanomials, LucasCache, SweepConfig, VerificationReport,
};
use num_bigint::BigInt;

const SWEEP_MAX_N: usize = 200;
const SWEEP_TARGET: Duration = Duration::from_secs(120);
const SELFTEST_SEED: u64 = 20240601;
const SELFTEST_CASES: usize = 1000;

type Verdict = Result<String, String>;

struct Sweep {
    reports: Vec<VerificationReport>,
    elapsed: Duration,
}

fn run_sweep() -> Sweep {
    let config = SweepConfig {
        max_n: SWEEP_MAX_N,
        checks: vec![Check::Identity, Check::Positivity],
        jobs: 1,
        ..SweepConfig::default()
    };
    let start = Instant::now();
    let reports = sweep(&config).expect("valid sweep config");
    Sweep {
        reports,
        elapsed: start.elapsed(),
    }
}

fn identity_sweep(s: &Sweep) -> Verdict {
    if s.reports.len() != SWEEP_MAX_N {
        return Err(format!(
            "{} reports for n <= {SWEEP_MAX_N}",
            s.reports.len()
        ));
    }
    if let Some(r) = s.reports.iter().find(|r| !(r.division_ok && r.identity_ok)) {
        return Err(format!(
            "n={}: {}",
            r.n,
            r.failure.as_deref().unwrap_or("?")
        ));
    }
    let secs = s.elapsed.as_secs_f64();
    let target = if s.elapsed < SWEEP_TARGET {
        "met"
    } else {
        "missed"
    };
    Ok(format!(
        "division = identity for 1 <= n <= {SWEEP_MAX_N}; sweep {secs:.1}s single-threaded (target < {}s: {target})",
        SWEEP_TARGET.as_secs()
    ))
}

fn positivity_sweep(s: &Sweep) -> Verdict {
    match s.reports.iter().find(|r| !r.positivity_ok) {
        Some(r) => Err(format!(
            "n={}: {}",
            r.n,
            r.failure.as_deref().unwrap_or("?")
        )),
        None if s.reports.len() == SWEEP_MAX_N => Ok(format!(
            "all coefficients positive for 1 <= n <= {SWEEP_MAX_N}, same run"
        )),
        None => Err(format!("{} reports", s.reports.len())),
    }
}

fn addition_rule() -> Verdict {
    let cache = LucasCache::new();
    for m in 1..=50 {
        for n in 1..=50 {
            let v = lemma21_check(&cache, m, n);
            if !v.holds() {
                return Err(format!("m={m} n={n}: {v}"));
            }
        }
    }
    for n in 1..=200 {
        let diagonal = lemma21_check(&cache, n, n);
        let product = product_identity_check(&cache, n);
        if !(diagonal.holds() && diagonal == product) {
            return Err(format!(
                "n={n}: diagonal {diagonal}, product form {product}"
            ));
        }
    }
    Ok("grid 1 <= m,n <= 50 holds; diagonal = product form for n <= 200".into())
}

fn ordinary_catalan() -> Verdict {
    let engine = Lucanomials::default();
    let (s, t) = (BigInt::from(2), BigInt::from(-1));
    let mut last = BigInt::from(0);
    for n in 1..=30 {
        let c = catalan_via_division(&engine, n).map_err(|e| format!("n={n}: {e}"))?;
        let got = c.eval(&s, &t);
        let expected = catalan_number(n as u64);
        if got != expected {
            return Err(format!("n={n}: {got}, oracle {expected}"));
        }
        last = got;
    }
    Ok(format!("C_1..C_30 match the oracle, C_30 = {last}"))
}

fn lucanomial_routes() -> Verdict {
    let engine = Lucanomials::default();
    let mut checked = 0;
    for m in 0..=60usize {
        for k in 0..=m as i64 {
            let by_factorial = engine
                .binom_factorial(m, k)
                .map_err(|e| format!("({m}, {k}): {e}"))?;
            if by_factorial != engine.binom_recurrence(m, k) {
                return Err(format!("routes differ at ({m}, {k})"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} pairs 0 <= k <= m <= 60 agree, all divisions exact"
    ))
}

fn independent_oracles() -> Verdict {
    let cache = LucasCache::new();
    for n in 1..=25 {
        if *cache.lucas(n) != strip_tiling_poly(n - 1).map_err(|e| e.to_string())? {
            return Err(format!("tiling differs at n={n}"));
        }
    }
    let engine = Lucanomials::default();
    for q in [2i64, 3] {
        let (s, t) = (BigInt::from(q + 1), BigInt::from(-q));
        for m in 0..=30u64 {
            for k in 0..=m as i64 {
                let got = engine.binom_recurrence(m as usize, k).eval(&s, &t);
                let expected = gaussian_binomial_at(m, k, &BigInt::from(q));
                if got != expected {
                    return Err(format!("q={q} ({m}, {k}): {got}, oracle {expected}"));
                }
            }
        }
    }
    Ok("tilings = lucas(n) for n <= 25; Gaussian q in {2,3} for m <= 30".into())
}

fn kernel_soundness() -> Verdict {
    let report = selftest::run(SELFTEST_SEED, SELFTEST_CASES);
    if let Some(p) = report.properties.iter().find(|p| !p.passed()) {
        return Err(format!(
            "{}: {} failures, {}",
            p.name,
            p.failures,
            p.first_failure.as_deref().unwrap_or("?")
        ));
    }
    for name in [
        "ring axioms",
        "division round trip",
        "parse/format round trip",
    ] {
        match report.properties.iter().find(|p| p.name == name) {
            Some(p) if p.cases >= SELFTEST_CASES => {}
            _ => return Err(format!("{name} did not run {SELFTEST_CASES} cases")),
        }
    }
    if selftest::run(SELFTEST_SEED, SELFTEST_CASES) != report {
        return Err("rerun with the same seed differs".into());
    }
    Ok(format!(
        "{} properties x {SELFTEST_CASES} cases, seed {SELFTEST_SEED}, reproducible",
        report.properties.len()
    ))
}

fn verify_output(jobs: u32) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lucat"))
        .args(["verify", "--max-n", "50", "--jobs", &jobs.to_string()])
        .env_remove("LUCAT_JOBS")
        .output()
        .map_err(|e| format!("cannot run lucat: {e}"))?;
    if !out.status.success() {
        return Err(format!("jobs={jobs}: exit {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Verdict {
    let one = verify_output(1)?;
    let eight = verify_output(8)?;
    if one != eight {
        return Err("output differs between jobs=1 and jobs=8".into());
    }
    let lines = one.iter().filter(|&&b| b == b'\n').count();
    Ok(format!(
        "{} bytes, {lines} lines identical for jobs 1 and 8",
        one.len()
    ))
}

fn guarded(f: impl FnOnce() -> Verdict + panic::UnwindSafe) -> Verdict {
    panic::catch_unwind(f).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

fn main() -> ExitCode {
    let sweep = panic::catch_unwind(run_sweep).map_err(|_| "sweep panicked".to_string());
    let results: Vec<(&str, Verdict)> = vec![
        (
            "identity sweep",
            sweep
                .as_ref()
                .map_err(Clone::clone)
                .and_then(identity_sweep),
        ),
        (
            "positivity sweep",
            sweep
                .as_ref()
                .map_err(Clone::clone)
                .and_then(positivity_sweep),
        ),
        ("addition rule", guarded(addition_rule)),
        ("ordinary Catalan numbers", guarded(ordinary_catalan)),
        ("lucanomial routes", guarded(lucanomial_routes)),
        ("tiling and Gaussian oracles", guarded(independent_oracles)),
        ("kernel soundness", guarded(kernel_soundness)),
        ("determinism across jobs", guarded(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, verdict)) in results.iter().enumerate() {
        match verdict {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
