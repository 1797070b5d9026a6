//! Command dispatch behind the `thermoshift` binary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, ExperimentConfig, RouteChoice};
use crate::error::{Error, Result};
use crate::measures::{
    gibbs_certificate, gibbs_construct, gibbs_pre_average, rpf_equilibrium, CESARO_SLACK, EXACT_SLACK,
};
use crate::potential::{constants_report, summability_report, PotentialSeq};
use crate::pressure::{
    gurevich_estimate, pressure_curve, topological_pressure, transfer_pressure, truncation_curve,
    PressureEstimate, PressureOptions, Route,
};
use crate::scalar::Scalar;
use crate::shift::{compact_approximation, ShiftModel};
use crate::zero_temp::{
    anneal, maximizing_subshift, pair_fingerprint, zero_temp_report, DEFAULT_DEPTH, DEFAULT_LEAKAGE,
    DEFAULT_RADIUS, DEFAULT_TOLERANCE,
};

pub const SCHEMA_VERSION: &str = "1";

/// Exit status for a finished run.
pub fn exit_code(result: &Result<Vec<PathBuf>>) -> i32 {
    match result {
        Ok(_) => 0,
        Err(e) if e.is_input_error() => 1,
        Err(_) => 2,
    }
}

#[derive(Serialize)]
struct Report<'a, B: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    route: &'a str,
    fingerprint: String,
    tolerances: BTreeMap<&'static str, f64>,
    result: B,
}

struct Ctx<'a> {
    command: Command,
    config: &'a ExperimentConfig,
    shift: ShiftModel,
    pot: PotentialSeq<f64>,
    out: &'a Path,
    written: Vec<PathBuf>,
}

impl Ctx<'_> {
    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.out.join(name);
        fs::write(&path, contents)?;
        self.written.push(path);
        Ok(())
    }

    fn report<B: Serialize>(
        &mut self,
        name: &str,
        route: &str,
        tolerances: BTreeMap<&'static str, f64>,
        result: B,
    ) -> Result<()> {
        let report = Report {
            schema_version: SCHEMA_VERSION,
            command: self.command.name(),
            route,
            fingerprint: pair_fingerprint(&self.shift, &self.pot),
            tolerances,
            result,
        };
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        self.write(name, &text)
    }

    fn options(&self) -> PressureOptions {
        PressureOptions {
            max_length: self.config.n_max,
            word_budget: self.config.word_budget,
        }
    }

    /// `t` for commands that accept the boundary value `t = 1`.
    fn t_at_least_one(&self) -> Result<f64> {
        let t = self.config.t.ok_or_else(|| Error::validation("t", "t is required"))?;
        if !(t >= 1.0) || !t.is_finite() {
            return Err(Error::validation("t", format!("t must exceed 1 (got {t})")));
        }
        Ok(t)
    }
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Periodic => "periodic",
        Route::CylinderSup => "cylinder-sup",
        Route::Transfer => "transfer",
    }
}

/// Runs one command and writes its artifacts into `out`.
pub fn run(command: Command, config: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>> {
    if let Some(c) = config.command {
        if c != command {
            return Err(Error::validation(
                "command",
                format!("config is for '{}', not '{}'", c.name(), command.name()),
            ));
        }
    }
    let shift = config.shift.build()?;
    let pot = config.potential.build()?;
    fs::create_dir_all(out)?;
    let mut ctx = Ctx {
        command,
        config,
        shift,
        pot,
        out,
        written: Vec::new(),
    };
    match command {
        Command::Pressure => run_pressure(&mut ctx)?,
        Command::Curve => run_curve(&mut ctx)?,
        Command::Gibbs => run_gibbs(&mut ctx)?,
        Command::Approx => run_approx(&mut ctx)?,
        Command::Zerotemp => run_zerotemp(&mut ctx)?,
        Command::Certify => run_certify(&mut ctx)?,
    }
    Ok(ctx.written)
}

fn pressure_estimate(ctx: &Ctx, t: f64) -> Result<PressureEstimate<f64>> {
    let c = ctx.config;
    let route = match c.route {
        RouteChoice::Auto if ctx.pot.is_additive() => RouteChoice::Transfer,
        RouteChoice::Auto => RouteChoice::CylinderSup,
        r => r,
    };
    match route {
        RouteChoice::Transfer => transfer_pressure(&ctx.shift, &ctx.pot, t),
        RouteChoice::Periodic => {
            let a = c.anchor.unwrap_or(ctx.shift.alphabet()[0]);
            gurevich_estimate(&ctx.shift, &ctx.pot, t, a, 1..=c.n_max)
        }
        _ => topological_pressure(&ctx.shift, &ctx.pot, t, 1..=c.n_max, c.word_budget),
    }
}

fn run_pressure(ctx: &mut Ctx) -> Result<()> {
    let t = ctx.t_at_least_one()?;
    let est = pressure_estimate(ctx, t)?;
    let tolerances = BTreeMap::from([
        ("solver", f64::solver_tolerance()),
        ("residual", est.residual),
        ("word_budget", ctx.config.word_budget as f64),
    ]);
    let result = json!({
        "t": t,
        "value": est.value,
        "n_sequence": est.n_sequence,
        "residual": est.residual,
        "partial": est.partial,
        "warnings": est.warnings,
    });
    ctx.report("pressure.json", route_name(est.route), tolerances, result)
}

fn run_curve(ctx: &mut Ctx) -> Result<()> {
    let grid = ctx
        .config
        .grid
        .as_ref()
        .ok_or_else(|| Error::validation("grid", "grid is required"))?
        .points()?;
    let h = ctx.config.step;
    let curve = pressure_curve(&ctx.shift, &ctx.pot, &grid, h, ctx.options())?;
    ctx.write("curve.csv", &curve.to_csv())?;
    let tolerances = BTreeMap::from([("step", h), ("solver", f64::solver_tolerance()), ("convexity", 1e-8)]);
    let result = json!({
        "points": curve.points,
        "convex": curve.is_convex(1e-8),
        "strictly_convex": curve.is_strictly_convex(),
        "failure": curve.failure,
    });
    ctx.report("curve.json", route_name(curve.route), tolerances, result)?;
    match curve.failure {
        Some(message) => Err(Error::NonConvergence {
            operation: "pressure curve".into(),
            message,
        }),
        None => Ok(()),
    }
}

fn run_gibbs(ctx: &mut Ctx) -> Result<()> {
    let t = ctx.t_at_least_one()?;
    let n = ctx.config.depth.unwrap_or(8);
    let m = ctx.config.averaging.unwrap_or(n / 2).max(1);
    let slack = ctx.config.slack.unwrap_or(CESARO_SLACK);
    let est = pressure_estimate(ctx, t)?;
    let nu = gibbs_pre_average(&ctx.shift, &ctx.pot, t, n)?;
    let tpot = ctx.pot.scale(t);
    let mut pre_ratio = f64::NEG_INFINITY;
    for (w, &v) in nu.level(n)? {
        pre_ratio = pre_ratio.max(v / (tpot.eval_fn(w)? - n as f64 * est.value).exp());
    }
    let mu = gibbs_construct(&ctx.shift, &ctx.pot, t, n, m)?;
    let cert = gibbs_certificate(&ctx.shift, &mu, &ctx.pot, t, est.value, mu.depth(), slack)?;
    let mut dump = serde_json::to_string_pretty(&mu)?;
    dump.push('\n');
    ctx.write("measure.json", &dump)?;
    let tolerances = BTreeMap::from([("slack", slack), ("solver", f64::solver_tolerance())]);
    let result = json!({
        "t": t,
        "depth": n,
        "averaging": m,
        "pressure": est.value,
        "pre_average_max_ratio": pre_ratio,
        "invariance_defect": mu.invariance_defect(),
        "certificate": cert,
    });
    ctx.report("gibbs.json", route_name(est.route), tolerances, result)
}

fn run_approx(ctx: &mut Ctx) -> Result<()> {
    let levels = ctx.config.levels.unwrap_or(4);
    let approx = compact_approximation(&ctx.shift, levels, Default::default())?;
    let level_json: Vec<Value> = approx
        .levels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            json!({
                "level": k + 1,
                "retained": l.retained,
                "alphabet": l.alphabet(),
                "connection_length": l.connection_length,
                "connectors": l.connectors,
                "mixing": l.certificate,
            })
        })
        .collect();
    let curve = match ctx.config.t {
        Some(t) => {
            if !(t > 1.0) {
                return Err(Error::validation("t", format!("t must exceed 1 (got {t})")));
            }
            Some(truncation_curve(&ctx.pot, t, &approx, ctx.options())?)
        }
        None => None,
    };
    let route = curve.as_ref().map(|c| route_name(c.route)).unwrap_or("none");
    let tolerances = BTreeMap::from([("monotone", crate::pressure::MONOTONE_TOLERANCE)]);
    let result = json!({
        "ambient_mixing_verified": approx.ambient_mixing_verified,
        "levels": level_json,
        "truncation_curve": curve,
    });
    ctx.report("approx.json", route, tolerances, result)
}

fn run_zerotemp(ctx: &mut Ctx) -> Result<()> {
    let schedule = ctx
        .config
        .schedule
        .as_ref()
        .ok_or_else(|| Error::validation("schedule", "schedule is required"))?
        .points()?;
    let depth = ctx.config.depth.unwrap_or(DEFAULT_DEPTH);
    let radius = ctx.config.radius.unwrap_or(DEFAULT_RADIUS);
    let delta = ctx.config.delta.unwrap_or(0.0);
    let tolerance = ctx.config.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let leakage = ctx.config.leakage.unwrap_or(DEFAULT_LEAKAGE);
    let trace = anneal(&ctx.shift, &ctx.pot, &schedule, depth, radius, ctx.options())?;
    ctx.write("trace.csv", &trace.to_csv())?;
    let oracle = if ctx.pot.is_additive() && ctx.pot.memory() == 1 {
        Some(maximizing_subshift(&ctx.shift, &ctx.pot, delta)?)
    } else {
        None
    };
    let verdict = match &oracle {
        Some(report) => Some(zero_temp_report(&trace, report, tolerance, leakage)?),
        None => None,
    };
    let tolerances = BTreeMap::from([
        ("tolerance", tolerance),
        ("leakage", leakage),
        ("radius", radius),
        ("delta", delta),
        ("monotone", crate::zero_temp::MONOTONE_TOLERANCE),
    ]);
    let route = trace.route;
    let result = json!({
        "trace": trace,
        "oracle": oracle,
        "verdict": verdict,
        "note": if oracle.is_none() { Some("cycle oracle needs a depth-1 additive potential; only trends are reported") } else { None },
    });
    ctx.report("zerotemp.json", route, tolerances, result)?;
    match &trace.status {
        Some(message) => Err(Error::NonConvergence {
            operation: "anneal".into(),
            message: message.clone(),
        }),
        None => Ok(()),
    }
}

fn run_certify(ctx: &mut Ctx) -> Result<()> {
    let depth = ctx.config.depth.unwrap_or(8);
    let mixing = ctx.shift.mixing_certificate()?;
    let constants = constants_report(&ctx.pot, &ctx.shift, depth)?;
    let t = match ctx.config.t {
        Some(_) => Some(ctx.t_at_least_one()?),
        None => None,
    };
    let summability = match (ctx.pot.decay_law(), t) {
        (Some(_), Some(t)) => Some(summability_report(&ctx.pot, t, ctx.shift.alphabet().len())?),
        _ => None,
    };
    let slack = ctx.config.slack.unwrap_or(EXACT_SLACK);
    let gibbs = match t {
        Some(t) if ctx.pot.is_additive() && mixing.is_mixing() => {
            let p = transfer_pressure(&ctx.shift, &ctx.pot, t)?.value;
            let d = depth.min(10);
            let mu = rpf_equilibrium(&ctx.shift, &ctx.pot, t, d)?;
            Some(json!({
                "pressure": p,
                "invariance_defect": mu.invariance_defect(),
                "certificate": gibbs_certificate(&ctx.shift, &mu, &ctx.pot, t, p, d, slack)?,
            }))
        }
        _ => None,
    };
    let tolerances = BTreeMap::from([("slack", slack), ("solver", f64::solver_tolerance())]);
    let result = json!({
        "mixing": mixing,
        "constants": constants,
        "summability": summability,
        "gibbs": gibbs,
    });
    let route = if gibbs.is_some() { "transfer" } else { "none" };
    ctx.report("certify.json", route, tolerances, result)
}
