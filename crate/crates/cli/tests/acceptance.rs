//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Runs as a plain binary (`harness = false`) so the report is always shown:
//! `cargo test -p dcfp-cli --test acceptance`.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use dcfp_core::kernel::{facilitation_pmf, FacilitationLaw, GammaLaw, NormalLaw, DEFAULT_TAIL};
use dcfp_core::reliability::{
    analytic_reliability, estimate_reliability, sweep, ReliabilityCurve, SweepParameter,
};
use dcfp_core::{simulate_replication, ModelParams, ReplicationSeed};

const REPS: u64 = 100_000;
const SEED: u64 = 20_190_101;

/// Upper 1% points of the chi-squared distribution, df = 1..=15.
const CHI2_CRIT_1PCT: [f64; 15] = [
    6.634_897, 9.210_340, 11.344_867, 13.276_704, 15.086_272, 16.811_894, 18.475_307, 20.090_235,
    21.665_994, 23.209_251, 24.724_970, 26.216_967, 27.688_250, 29.141_238, 30.577_914,
];

/// Asymptotic Kolmogorov–Smirnov 1% coefficient.
const KS_1PCT: f64 = 1.628;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn valve_grid() -> Vec<f64> {
    (0..41).map(|i| i as f64 * 0.5).collect()
}

fn decoupled(lambda0: f64, eta: f64) -> ModelParams {
    let mut p = ModelParams::valve();
    p.shock.gamma_dep = 0.0;
    p.shock.lambda0 = lambda0;
    p.shock.eta = eta;
    p.rate_change = false;
    p
}

/// Shock-rich variant where thresholds and feedback actually matter.
fn shock_heavy() -> ModelParams {
    let mut p = ModelParams::valve();
    p.shock.lambda0 = 0.2;
    p.shock.gamma_dep = 0.1;
    p.shock.magnitude_law = NormalLaw::new(20.0, 8.0).unwrap();
    p
}

/// Largest violation of `lower[i] <= upper[i]`, or 0.
fn worst_violation(lower: &ReliabilityCurve, upper: &ReliabilityCurve) -> f64 {
    lower
        .estimate
        .iter()
        .zip(&upper.estimate)
        .map(|(l, u)| (l - u).max(0.0))
        .fold(0.0, f64::max)
}

fn oracle_equivalence() -> Outcome {
    let times = [1.0, 2.0, 4.0, 8.0];
    let mut worst_ratio = 0.0f64;
    let mut worst = String::new();
    let mut pass = true;
    for lambda0 in [0.1, 0.5, 1.0] {
        for eta in [0.05, 0.2, 1.0] {
            let mut p = decoupled(lambda0, eta);
            // Up to ~10 shocks can accumulate before soft failure at
            // λ₀ = η = 1; dt = 0.005 keeps rate·dt within the guard.
            p.numerics.dt = 0.005;
            p.numerics.horizon = 8.0;
            let c = estimate_reliability(&p, &times, REPS, SEED).unwrap();
            for (i, &t) in times.iter().enumerate() {
                let exact = analytic_reliability(&p, t, None).unwrap();
                let dev = (c.estimate[i] - exact).abs();
                let bound = (3.0 * c.half_width(i)).max(0.01);
                pass &= dev <= bound;
                if dev / bound > worst_ratio {
                    worst_ratio = dev / bound;
                    worst = format!("λ0={lambda0} η={eta} t={t}: |{:.5} − {exact:.5}| = {dev:.2e} vs bound {bound:.2e}", c.estimate[i]);
                }
            }
        }
    }
    outcome(pass, format!("36 points, worst {worst}"))
}

fn facilitation_pmf_checks() -> Outcome {
    let mut min_mass = 1.0f64;
    for eta in [0.05, 0.2, 1.0] {
        for big_lambda in [0.1, 1.0, 10.0] {
            let mut terms = FacilitationLaw::new(eta, big_lambda)
                .unwrap()
                .truncated_terms(DEFAULT_TAIL);
            terms.by_ref().for_each(drop);
            min_mass = min_mass.min(terms.cumulative());
        }
    }
    let mut sup = 0.0f64;
    for big_lambda in [0.5f64, 2.0, 5.0] {
        let mut poisson = (-big_lambda).exp();
        for i in 0..=50u64 {
            if i > 0 {
                poisson *= big_lambda / i as f64;
            }
            sup = sup.max((facilitation_pmf(i, 1e-6, big_lambda).unwrap() - poisson).abs());
        }
    }
    let mut p0_err = 0.0f64;
    for eta in [1e-6, 0.05, 0.2, 1.0, 3.0] {
        for big_lambda in [0.0f64, 0.1, 1.0, 2.0, 10.0, 40.0] {
            let p0 = facilitation_pmf(0, eta, big_lambda).unwrap();
            p0_err = p0_err.max((p0 - (-big_lambda).exp()).abs());
        }
    }
    outcome(
        min_mass >= 1.0 - 1e-9 && sup < 1e-4 && p0_err <= 1e-12,
        format!("min mass {min_mass:.15}, Poisson sup {sup:.2e}, |P0 − e^-Λ| {p0_err:.1e}"),
    )
}

fn shock_free() -> Outcome {
    let mut p = ModelParams::valve();
    p.shock.lambda0 = 0.0;
    p.numerics.horizon = 4.0;
    let c = estimate_reliability(&p, &[4.0], REPS, SEED).unwrap();
    let expected = GammaLaw::new(2.0, 1.2).unwrap().cdf(5.0).unwrap();
    let se = (expected * (1.0 - expected) / REPS as f64).sqrt();
    let dev = (c.estimate[0] - expected).abs();
    outcome(
        dev <= 3.0 * se,
        format!(
            "R̂(4) = {:.5}, G(5; 2, 1.2) = {expected:.5}, |Δ| = {:.2} SE",
            c.estimate[0],
            dev / se
        ),
    )
}

fn rate_change_ordering() -> Outcome {
    let grid = valve_grid();
    let mut details = Vec::new();
    let mut pass = true;
    for (label, p, reps) in [
        ("valve", ModelParams::valve(), REPS),
        ("shock-heavy", shock_heavy(), 20_000),
    ] {
        let changing = estimate_reliability(&p, &grid, reps, SEED).unwrap();
        let fixed = estimate_reliability(&p.fixed_rate(), &grid, reps, SEED).unwrap();
        let v = worst_violation(&changing, &fixed);
        let gap = fixed
            .estimate
            .iter()
            .zip(&changing.estimate)
            .map(|(f, c)| f - c)
            .fold(0.0, f64::max);
        pass &= v == 0.0;
        details.push(format!("{label}: max violation {v}, max gap {gap:.5}"));
    }
    outcome(pass, details.join("; "))
}

fn monotone_sweep(parameter: SweepParameter, values: &[f64], nondecreasing: bool) -> Outcome {
    let grid = valve_grid();
    let mut details = Vec::new();
    let mut pass = true;
    for (label, p, reps) in [
        ("valve", ModelParams::valve(), REPS),
        ("shock-heavy", shock_heavy(), 20_000),
    ] {
        let curves = sweep(&p, parameter, values, &grid, reps, SEED).unwrap();
        let mut v = 0.0f64;
        for w in curves.windows(2) {
            let (lo, hi) = if nondecreasing {
                (&w[0].1, &w[1].1)
            } else {
                (&w[1].1, &w[0].1)
            };
            v = v.max(worst_violation(lo, hi));
        }
        let last = grid.len() - 1;
        let ends: Vec<String> = curves
            .iter()
            .map(|(x, c)| format!("{x}→{:.4}", c.estimate[last]))
            .collect();
        pass &= v == 0.0;
        details.push(format!(
            "{label}: max violation {v}, R̂(20) {}",
            ends.join(" ")
        ));
    }
    outcome(pass, details.join("; "))
}

fn degenerate_equivalences() -> Outcome {
    let grid = valve_grid();
    let mut pass = true;
    let mut details = Vec::new();
    for (label, p, reps) in [
        ("valve", ModelParams::valve(), REPS),
        ("shock-heavy", shock_heavy(), 20_000),
    ] {
        let fixed = estimate_reliability(&p.fixed_rate(), &grid, reps, SEED).unwrap();
        let mut same_alpha = p;
        same_alpha.degradation.alpha2 = same_alpha.degradation.alpha1;
        let mut no_damage = p;
        no_damage.shock.damage_threshold = no_damage.shock.hard_threshold;
        let a = estimate_reliability(&same_alpha, &grid, reps, SEED).unwrap() == fixed;
        let b = estimate_reliability(&no_damage, &grid, reps, SEED).unwrap() == fixed;
        pass &= a && b;
        details.push(format!(
            "{label}: alpha2=alpha1 identical {a}, D0=D1 identical {b}"
        ));
    }
    outcome(pass, details.join("; "))
}

fn step_refinement() -> Outcome {
    let grid = valve_grid();
    let coarse = estimate_reliability(&ModelParams::valve(), &grid, REPS, SEED).unwrap();
    let mut fine_params = ModelParams::valve();
    fine_params.numerics.dt = 0.0025;
    let fine = estimate_reliability(&fine_params, &grid, REPS, SEED + 1).unwrap();
    let mut worst = 0.0f64;
    for i in 0..grid.len() {
        let joint = (coarse.standard_error(i).powi(2) + fine.standard_error(i).powi(2)).sqrt();
        let dev = (coarse.estimate[i] - fine.estimate[i]).abs();
        if dev > 0.0 {
            worst = worst.max(if joint > 0.0 {
                dev / joint
            } else {
                f64::INFINITY
            });
        }
    }
    outcome(
        worst <= 3.0,
        format!("max |Δ| = {worst:.2} joint SE over 41 points"),
    )
}

fn config_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/valve.json")
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_dcfp"))
            .args(["curve", "--config"])
            .arg(config_path())
            .args([
                "--reps",
                "20000",
                "--seed",
                "7",
                "--threads",
                threads,
                "--out",
            ])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let a = run("1", "a.csv");
    let b = run("1", "b.csv");
    let c = run("8", "c.csv");
    let rows = a.iter().filter(|&&b| b == b'\n').count();
    outcome(
        a == b && a == c && rows == 42,
        format!(
            "{} bytes, {rows} lines; repeat identical {}, threads 1 vs 8 identical {}",
            a.len(),
            a == b,
            a == c
        ),
    )
}

fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

fn chi_squared(counts: &[u64], probs: &[f64], n: u64) -> (f64, usize) {
    // Pool the upper tail until every cell expects at least 5.
    let mut cells: Vec<(u64, f64)> = counts.iter().copied().zip(probs.iter().copied()).collect();
    while cells.len() > 2 && cells.last().unwrap().1 * (n as f64) < 5.0 {
        let (c, p) = cells.pop().unwrap();
        let last = cells.last_mut().unwrap();
        last.0 += c;
        last.1 += p;
    }
    let stat = cells
        .iter()
        .map(|&(c, p)| {
            let e = p * n as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    (stat, cells.len() - 1)
}

/// Count law of the facilitation process by its ratio recurrence.
fn negative_binomial_probs(eta: f64, big_lambda: f64, cells: usize) -> Vec<f64> {
    let r = 1.0 / eta;
    let q = 1.0 - (-eta * big_lambda).exp();
    let mut p = (-big_lambda).exp();
    let mut probs = Vec::with_capacity(cells);
    for i in 0..cells - 1 {
        probs.push(p);
        p *= (r + i as f64) / (i as f64 + 1.0) * q;
    }
    let head: f64 = probs.iter().sum();
    probs.push(1.0 - head);
    probs
}

fn sampler_distributions() -> Outcome {
    // Gamma endpoints without shocks.
    let mut p = ModelParams::valve();
    p.shock.lambda0 = 0.0;
    p.degradation.soft_threshold = 1e9;
    let mut xs: Vec<f64> = (0..REPS)
        .map(|i| {
            simulate_replication(&p, 4.0, 0.01, ReplicationSeed::new(SEED, i))
                .unwrap()
                .final_pure_degradation
        })
        .collect();
    xs.sort_by(f64::total_cmp);
    let law = GammaLaw::new(2.0, 1.2).unwrap();
    let d = ks_statistic(&xs, |x| law.cdf(x).unwrap());
    let ks_crit = KS_1PCT / (REPS as f64).sqrt();

    // Shock counts with γ = 0 and no failures.
    let mut details = vec![format!("KS D = {d:.5} (crit {ks_crit:.5})")];
    let mut pass = d < ks_crit;
    for eta in [0.2, 1e-6] {
        let mut q = decoupled(0.5, eta);
        q.degradation.soft_threshold = 1e9;
        q.shock.damage_threshold = 1e9;
        q.shock.hard_threshold = 1e9;
        let cells = 11;
        let mut counts = vec![0u64; cells];
        for i in 0..REPS {
            let n = simulate_replication(&q, 4.0, 0.01, ReplicationSeed::new(SEED + 17, i))
                .unwrap()
                .n_shocks as usize;
            counts[n.min(cells - 1)] += 1;
        }
        let probs = negative_binomial_probs(eta, 0.5 * 4.0, cells);
        let (stat, df) = chi_squared(&counts, &probs, REPS);
        let crit = CHI2_CRIT_1PCT[df - 1];
        pass &= stat < crit;
        details.push(format!("η={eta}: χ² = {stat:.2} (df {df}, crit {crit:.2})"));
    }
    outcome(pass, details.join("; "))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence, decoupled case", oracle_equivalence),
        (
            "facilitation pmf normalization / Poisson limit / P0",
            facilitation_pmf_checks,
        ),
        ("shock-free reduction", shock_free),
        (
            "rate-change curve below fixed-rate curve",
            rate_change_ordering,
        ),
        ("D0 sweep nondecreasing", || {
            monotone_sweep(SweepParameter::DamageThreshold, &[20.0, 30.0, 40.0], true)
        }),
        ("gamma sweep nonincreasing", || {
            monotone_sweep(SweepParameter::Gamma, &[0.0, 0.001, 0.01], false)
        }),
        ("degenerate equivalences", degenerate_equivalences),
        ("step refinement dt=0.01 vs 0.0025", step_refinement),
        ("CLI determinism across runs and threads", cli_determinism),
        (
            "sampler distributions (KS, chi-squared)",
            sampler_distributions,
        ),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let Outcome { pass, detail } = check();
        failed += usize::from(!pass);
        println!(
            "[{}] {:>2}. {name}: {detail} ({:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.0}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
