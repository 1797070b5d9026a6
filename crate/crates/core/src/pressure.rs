//! Pressure of `tF` by three routes: weighted periodic orbits (Gurevich),
//! cylinder sups (topological, infimum form) and the transfer-matrix Perron
//! root for additive locally constant potentials. Also the truncation curve
//! over compact approximations and the sampled pressure curve `P, L, H`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{PowerIteration, SparseMatrix};
use crate::potential::{summability_report, PotentialSeq, Summability};
use crate::scalar::Scalar;
use crate::shift::{CompactApproximation, ShiftModel, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Periodic,
    CylinderSup,
    Transfer,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PressureEstimate<T> {
    pub value: T,
    pub route: Route,
    /// Per-length values `(n, value_n)`; for the cylinder-sup route these are
    /// the raw `(1/n) log Z_n`, and `value` is their running infimum.
    pub n_sequence: Vec<(usize, T)>,
    /// Change produced by the last step.
    pub residual: T,
    /// Set when the word budget cut the requested range short.
    pub partial: bool,
    pub warnings: Vec<String>,
}

/// Streaming `log sum exp`.
#[derive(Clone, Copy, Debug)]
struct OnlineLse<T> {
    max: T,
    sum: T,
}

impl<T: Scalar> OnlineLse<T> {
    fn new() -> Self {
        OnlineLse {
            max: T::neg_infinity(),
            sum: T::zero(),
        }
    }

    fn push(&mut self, x: T) {
        if x == T::neg_infinity() {
            return;
        }
        if x > self.max {
            self.sum = self.sum * (self.max - x).exp() + T::one();
            self.max = x;
        } else {
            self.sum = self.sum + (x - self.max).exp();
        }
    }

    fn value(&self) -> T {
        if self.max == T::neg_infinity() {
            T::neg_infinity()
        } else {
            self.max + self.sum.ln()
        }
    }
}

/// `(1/n) log sum_{σ^n x = x, x ∈ [a]} exp(t f_n(x))` for each `n`.
pub fn gurevich_estimate<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    a: Symbol,
    n_range: impl IntoIterator<Item = usize>,
) -> Result<PressureEstimate<T>> {
    shift.index_of(a)?;
    let tpot = pot.scale(t);
    let mut seq = Vec::new();
    let mut warnings = Vec::new();
    for n in n_range {
        let mut lse = OnlineLse::new();
        let mut count = 0usize;
        let mut failure = None;
        shift.for_each_periodic_point(n, a, |w| match tpot.eval_periodic(w) {
            Ok(v) => {
                count += 1;
                lse.push(v);
            }
            Err(e) => {
                failure.get_or_insert(e);
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        if count == 0 {
            warnings.push(format!("no period-{n} point through {a}; skipped"));
            continue;
        }
        seq.push((n, lse.value() / T::of_usize(n)));
    }
    finish(seq, Route::Periodic, false, warnings, false)
}

fn finish<T: Scalar>(
    seq: Vec<(usize, T)>,
    route: Route,
    running_inf: bool,
    warnings: Vec<String>,
    partial: bool,
) -> Result<PressureEstimate<T>> {
    let Some(&(_, last)) = seq.last() else {
        return Err(Error::NonConvergence {
            operation: format!("{route:?} pressure"),
            message: "no length in the requested range produced a value".into(),
        });
    };
    let (value, residual) = if running_inf {
        let mut inf = T::infinity();
        let mut prev = T::infinity();
        for &(_, v) in &seq {
            prev = inf;
            inf = inf.min(v);
        }
        let residual = if seq.len() > 1 { (prev - inf).abs() } else { T::zero() };
        (inf, residual)
    } else {
        let residual = if seq.len() > 1 {
            (last - seq[seq.len() - 2].1).abs()
        } else {
            T::zero()
        };
        (last, residual)
    };
    Ok(PressureEstimate {
        value,
        route,
        n_sequence: seq,
        residual,
        partial,
        warnings,
    })
}

/// Number of admissible words of length `n`, as a float.
fn word_count(shift: &ShiftModel, n: usize) -> Result<f64> {
    let succ = shift.successor_indices()?;
    let mut v = vec![1.0f64; succ.len()];
    for _ in 1..n {
        v = succ.iter().map(|s| s.iter().map(|&j| v[j]).sum()).collect();
    }
    Ok(v.iter().sum())
}

pub const DEFAULT_WORD_BUDGET: usize = 1 << 22;

/// Running infimum over `n` of `(1/n) log sum_{|w| = n} exp(t sup f_n|[w])`.
pub fn topological_pressure<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    n_range: impl IntoIterator<Item = usize>,
    word_budget: usize,
) -> Result<PressureEstimate<T>> {
    let tpot = pot.scale(t);
    let mut seq = Vec::new();
    let mut warnings = Vec::new();
    let mut partial = false;
    for n in n_range {
        if word_count(shift, n)? > word_budget as f64 {
            warnings.push(format!("length {n} exceeds the word budget {word_budget}; stopped"));
            partial = true;
            break;
        }
        let mut lse = OnlineLse::new();
        let mut failure = None;
        shift.for_each_word(n, |w| match tpot.eval_fn(w) {
            Ok(v) => lse.push(v),
            Err(e) => {
                failure.get_or_insert(e);
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        seq.push((n, lse.value() / T::of_usize(n)));
    }
    finish(seq, Route::CylinderSup, true, warnings, partial)
}

/// Transfer matrix of an additive potential: states are the admissible words
/// of length `memory`, `u -> v` when `v` continues `u` by one symbol, and the
/// weight of every edge leaving `u` is `exp(t g(u))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix<T> {
    pub states: Vec<Word>,
    pub matrix: SparseMatrix<T>,
    /// `t g(u)` per state.
    pub log_weights: Vec<T>,
}

pub fn transfer_matrix<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
) -> Result<TransferMatrix<T>> {
    if !pot.is_additive() {
        return Err(Error::validation(
            "potential",
            "the transfer route needs an additive locally constant potential",
        ));
    }
    let tpot = pot.scale(t);
    let r = pot.memory();
    let mut states = Vec::new();
    let mut log_weights = Vec::new();
    let mut failure = None;
    shift.for_each_word(r, |w| {
        // windows missing from a table are forbidden transitions
        match tpot.eval_at(w, 1) {
            Ok(v) => {
                states.push(Word::from(w));
                log_weights.push(v);
            }
            Err(Error::Domain(_)) if r > 1 => {}
            Err(e) => {
                failure.get_or_insert(e);
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let index: BTreeMap<&[Symbol], usize> = states
        .iter()
        .enumerate()
        .map(|(i, w)| (w.symbols(), i))
        .collect();
    let mut by_prefix: BTreeMap<&[Symbol], Vec<usize>> = BTreeMap::new();
    for (j, w) in states.iter().enumerate() {
        by_prefix.entry(&w[..r - 1]).or_default().push(j);
    }
    let mut matrix = SparseMatrix::new(states.len());
    for (i, u) in states.iter().enumerate() {
        let weight = log_weights[i].exp();
        if r == 1 {
            for s in shift.successors_of(u[0])? {
                if let Some(&j) = index.get(&[s][..]) {
                    matrix.push(i, j, weight);
                }
            }
        } else if let Some(next) = by_prefix.get(&u[1..]) {
            for &j in next {
                if shift.allows(u[r - 1], states[j][r - 1]) {
                    matrix.push(i, j, weight);
                }
            }
        }
    }
    Ok(TransferMatrix {
        states,
        matrix,
        log_weights,
    })
}

fn support_is_primitive<T: Scalar>(m: &SparseMatrix<T>) -> bool {
    let support = m.support();
    if support.iter().any(|s| s.is_empty()) {
        return false;
    }
    let n = support.len();
    let edges: Vec<(usize, usize)> = support
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
        .collect();
    match ShiftModel::from_edges(&(0..n).collect::<Vec<_>>(), &edges) {
        Ok(g) => g.is_primitive().unwrap_or(false),
        Err(_) => false,
    }
}

/// `log` of the Perron root of the weighted transfer matrix.
pub fn transfer_pressure<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
) -> Result<PressureEstimate<T>> {
    transfer_pressure_with(shift, pot, t, PowerIteration::default())
}

pub fn transfer_pressure_with<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    solver: PowerIteration<T>,
) -> Result<PressureEstimate<T>> {
    let tm = transfer_matrix(shift, pot, t)?;
    if !support_is_primitive(&tm.matrix) {
        return Err(Error::NonConvergence {
            operation: "transfer pressure".into(),
            message: "weighted transition matrix is not primitive".into(),
        });
    }
    let pair = solver.run(&tm.matrix)?;
    Ok(PressureEstimate {
        value: pair.eigenvalue.ln(),
        route: Route::Transfer,
        n_sequence: Vec::new(),
        residual: solver.tolerance,
        partial: false,
        warnings: Vec::new(),
    })
}

/// How pressure is evaluated by the curve and zero-temperature drivers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PressureOptions {
    /// Longest word length for the cylinder-sup route.
    pub max_length: usize,
    pub word_budget: usize,
}

impl Default for PressureOptions {
    fn default() -> Self {
        PressureOptions {
            max_length: 12,
            word_budget: DEFAULT_WORD_BUDGET,
        }
    }
}

/// Transfer route for additive potentials, cylinder-sup route otherwise.
pub fn pressure<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    options: PressureOptions,
) -> Result<PressureEstimate<T>> {
    if pot.is_additive() {
        transfer_pressure(shift, pot, t)
    } else {
        topological_pressure(shift, pot, t, 1..=options.max_length, options.word_budget)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationCurve<T> {
    pub t: T,
    /// `(level, alphabet size, P_k(t))`
    pub levels: Vec<(usize, usize, T)>,
    pub last_increment: T,
    pub route: Route,
}

pub const MONOTONE_TOLERANCE: f64 = 1e-9;

/// `P_k(t)` over the levels of a compact approximation.
pub fn truncation_curve<T: Scalar>(
    pot: &PotentialSeq<T>,
    t: T,
    approx: &CompactApproximation,
    options: PressureOptions,
) -> Result<TruncationCurve<T>> {
    if !(t > T::one()) {
        return Err(Error::validation("t", format!("t must exceed 1 (got {t})")));
    }
    if pot.decay_law().is_some() {
        let widest = approx
            .levels
            .iter()
            .flat_map(|l| l.alphabet().iter().copied())
            .max()
            .unwrap_or(1);
        if summability_report(pot, t, widest)?.verdict != Summability::Summable {
            return Err(Error::validation("potential", "potential is not summable"));
        }
    }
    let mut levels: Vec<(usize, usize, T)> = Vec::with_capacity(approx.levels.len());
    let mut route = Route::Transfer;
    for (k, level) in approx.levels.iter().enumerate() {
        let est = pressure(&level.shift, pot, t, options)?;
        route = est.route;
        if let Some(&(_, _, prev)) = levels.last() {
            let tol = T::of(MONOTONE_TOLERANCE) * T::one().max(prev.abs());
            if est.value < prev - tol {
                return Err(Error::InternalConsistency(format!(
                    "P_{}(t) = {} drops below P_{}(t) = {}",
                    k + 1,
                    est.value,
                    k,
                    prev
                )));
            }
        }
        levels.push((k + 1, level.alphabet().len(), est.value));
    }
    let last_increment = match levels.as_slice() {
        [.., (_, _, a), (_, _, b)] => *b - *a,
        _ => T::zero(),
    };
    Ok(TruncationCurve {
        t,
        levels,
        last_increment,
        route,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint<T> {
    pub t: T,
    pub p: T,
    /// Central difference `(P(t+h) - P(t-h)) / 2h`.
    pub l: T,
    /// `P - t L`.
    pub h: T,
    /// Second difference of `P` along the grid (interior points only).
    pub second_diff: Option<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PressureCurve<T> {
    pub step: T,
    pub route: Route,
    pub points: Vec<CurvePoint<T>>,
    /// Error that stopped the sweep early, if any.
    pub failure: Option<String>,
}

impl<T: Scalar> PressureCurve<T> {
    /// True when every second difference is `>= -tol`.
    pub fn is_convex(&self, tol: T) -> bool {
        self.points
            .iter()
            .filter_map(|p| p.second_diff)
            .all(|d| d >= -tol)
    }

    /// Second differences all strictly positive (reported, never assumed).
    pub fn is_strictly_convex(&self) -> bool {
        self.points
            .iter()
            .filter_map(|p| p.second_diff)
            .all(|d| d > T::zero())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,P,L,H,second_diff\n");
        for p in &self.points {
            let sd = p.second_diff.map(|d| d.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", p.t, p.p, p.l, p.h, sd));
        }
        out
    }
}

pub const DEFAULT_STEP: f64 = 1e-3;

/// Checks that a grid is ascending and lies in `(1, ∞)` with room for `h`.
pub fn validate_grid<T: Scalar>(grid: &[T], h: T) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::validation("grid", "grid must not be empty"));
    }
    if !(h > T::zero()) {
        return Err(Error::validation("step", "finite-difference step must be positive"));
    }
    if grid.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::validation("grid", "grid must be strictly ascending"));
    }
    if let Some(&t) = grid.iter().find(|&&t| !(t - h > T::one())) {
        return Err(Error::validation(
            "t",
            format!("t must exceed 1 (got {t} with step {h})"),
        ));
    }
    Ok(())
}

pub fn pressure_curve<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    grid: &[T],
    h: T,
    options: PressureOptions,
) -> Result<PressureCurve<T>> {
    validate_grid(grid, h)?;
    let route = if pot.is_additive() { Route::Transfer } else { Route::CylinderSup };
    let mut points: Vec<CurvePoint<T>> = Vec::with_capacity(grid.len());
    let mut failure = None;
    for &t in grid {
        let eval = |s: T| pressure(shift, pot, s, options).map(|e| e.value);
        match (eval(t), eval(t + h), eval(t - h)) {
            (Ok(p), Ok(up), Ok(down)) => {
                let l = (up - down) / (h + h);
                points.push(CurvePoint {
                    t,
                    p,
                    l,
                    h: p - t * l,
                    second_diff: None,
                });
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                failure = Some(format!("pressure at t = {t}: {e}"));
                break;
            }
        }
    }
    for i in 1..points.len().saturating_sub(1) {
        let (a, b, c) = (points[i - 1], points[i], points[i + 1]);
        let (hm, hp) = (b.t - a.t, c.t - b.t);
        let d = ((c.p - b.p) / hp - (b.p - a.p) / hm) * (hm + hp) / (T::one() + T::one());
        points[i].second_diff = Some(d);
    }
    Ok(PressureCurve {
        step: h,
        route,
        points,
        failure,
    })
}
