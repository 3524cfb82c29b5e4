use std::fmt::Write as _;
use std::io::Write;

use dcfp_core::reliability::{self, analytic_reliability, estimate_reliability, SweepParameter};
use dcfp_core::simulate_paths;

use crate::config::RunConfig;
use crate::format::g17;
use crate::{CliError, Common};

pub fn resolve_config(common: &Common, required: bool) -> Result<RunConfig, CliError> {
    let mut config = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None if required => {
            return Err(CliError::Config(
                "--config PATH is required for this command".into(),
            ))
        }
        None => RunConfig::validation_default(),
    };
    if let Some(seed) = common.seed {
        config.run.master_seed = seed;
    }
    if let Some(reps) = common.reps {
        config.run.n_reps = reps;
    }
    if let Some(dt) = common.dt {
        config.numerics.dt = dt;
    }
    if let Some(out) = &common.out {
        config.output.path = Some(out.clone());
    }
    config.validate()?;
    Ok(config)
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.output.path {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn curve(config: &RunConfig) -> Result<(), CliError> {
    let params = config.params()?;
    for w in params.warnings() {
        eprintln!("dcfp: warning: {w}");
    }
    let grid = config.run.grid.times()?;
    let c = estimate_reliability(&params, &grid, config.run.n_reps, config.run.master_seed)?;
    let mut out = String::from("t,R_hat,ci_low,ci_high,n_reps,n_soft,n_hard,n_survived\n");
    for i in 0..c.len() {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            g17(c.grid[i]),
            g17(c.estimate[i]),
            g17(c.ci_low[i]),
            g17(c.ci_high[i]),
            c.n_reps,
            c.soft_count[i],
            c.hard_count[i],
            c.survived_count(i)
        )
        .unwrap();
    }
    emit(config, &out)
}

fn parse_values(list: &str) -> Result<Vec<f64>, CliError> {
    let values = list
        .split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| {
                CliError::Config(format!("sweep values: cannot parse `{s}` as a number"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Config("sweep values: empty list".into()));
    }
    Ok(values)
}

pub fn sweep(config: &RunConfig, parameter: &str, values: &str) -> Result<(), CliError> {
    let parameter: SweepParameter = parameter.parse()?;
    let values = parse_values(values)?;
    let params = config.params()?;
    let grid = config.run.grid.times()?;
    let curves = reliability::sweep(
        &params,
        parameter,
        &values,
        &grid,
        config.run.n_reps,
        config.run.master_seed,
    )?;
    let mut out = String::from("param_value,t,R_hat,ci_low,ci_high\n");
    for (value, c) in &curves {
        for i in 0..c.len() {
            writeln!(
                out,
                "{},{},{},{},{}",
                g17(*value),
                g17(c.grid[i]),
                g17(c.estimate[i]),
                g17(c.ci_low[i]),
                g17(c.ci_high[i])
            )
            .unwrap();
        }
    }
    emit(config, &out)
}

const SUITE_LAMBDA0: [f64; 3] = [0.1, 0.5, 1.0];
const SUITE_ETA: [f64; 3] = [0.05, 0.2, 1.0];
const ABS_FLOOR: f64 = 0.01;

pub fn validate(config: &RunConfig, tolerance: Option<f64>, suite: bool) -> Result<(), CliError> {
    let mut base = config.params()?;
    if base.shock.gamma_dep != 0.0 {
        // Reported verbatim from the analytic evaluator's precondition.
        analytic_reliability(&base, 0.0, None)?;
    }
    base.rate_change = false;
    let grid = config.run.grid.times()?;
    let cases: Vec<(f64, f64)> = if suite {
        SUITE_LAMBDA0
            .iter()
            .flat_map(|&l| SUITE_ETA.iter().map(move |&e| (l, e)))
            .collect()
    } else {
        vec![(base.shock.lambda0, base.shock.eta)]
    };

    let mut report = String::new();
    writeln!(
        report,
        "# decoupled oracle check: gamma = 0, rate change disabled, n_reps = {}, dt = {}",
        config.run.n_reps, base.numerics.dt
    )
    .unwrap();
    match tolerance {
        Some(t) => writeln!(report, "# bound: fixed {t}").unwrap(),
        None => writeln!(report, "# bound: max(3 * CI half-width, {ABS_FLOOR})").unwrap(),
    }
    writeln!(
        report,
        "lambda0,eta,t,analytic,mc,half_width,deviation,bound,status"
    )
    .unwrap();

    let mut max_dev = 0.0f64;
    let mut all_pass = true;
    for (lambda0, eta) in cases {
        let mut p = base;
        p.shock.lambda0 = lambda0;
        p.shock.eta = eta;
        let c = estimate_reliability(&p, &grid, config.run.n_reps, config.run.master_seed)?;
        for (i, &t) in grid.iter().enumerate() {
            let exact = analytic_reliability(&p, t, None)?;
            let dev = (c.estimate[i] - exact).abs();
            let bound = tolerance.unwrap_or_else(|| (3.0 * c.half_width(i)).max(ABS_FLOOR));
            let pass = dev <= bound;
            all_pass &= pass;
            max_dev = max_dev.max(dev);
            writeln!(
                report,
                "{},{},{},{},{},{},{},{},{}",
                g17(lambda0),
                g17(eta),
                g17(t),
                g17(exact),
                g17(c.estimate[i]),
                g17(c.half_width(i)),
                g17(dev),
                g17(bound),
                if pass { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
    }
    writeln!(
        report,
        "# max deviation {} => {}",
        g17(max_dev),
        if all_pass { "PASS" } else { "FAIL" }
    )
    .unwrap();
    emit(config, &report)?;
    if all_pass {
        Ok(())
    } else {
        Err(CliError::ValidationFailed(format!(
            "max deviation {max_dev}"
        )))
    }
}

pub fn paths(config: &RunConfig, k: usize, stride: usize) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Config("--k must be at least 1".into()));
    }
    if stride == 0 {
        return Err(CliError::Config("--stride must be at least 1".into()));
    }
    let params = config.params()?;
    let outcomes = simulate_paths(
        &params,
        params.numerics.horizon,
        params.numerics.dt,
        config.run.master_seed,
        k,
    )?;
    let mut out = String::from("rep,t,pure,jumps,total,n_shocks,rate_changed\n");
    for (rep, o) in outcomes.iter().enumerate() {
        let trace = o.trace.as_deref().unwrap_or_default();
        let last = trace.len().saturating_sub(1);
        for (i, p) in trace.iter().enumerate() {
            if i % stride != 0 && i != last {
                continue;
            }
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                rep,
                g17(p.time),
                g17(p.pure),
                g17(p.jumps),
                g17(p.pure + p.jumps),
                p.n_shocks,
                u8::from(p.rate_changed)
            )
            .unwrap();
        }
    }
    emit(config, &out)
}
