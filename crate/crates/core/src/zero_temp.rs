//! The `t -> ∞` limit: equilibrium states along a temperature schedule,
//! accumulation clusters, and the maximum-mean-cycle oracle for ground states.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{spectral_radius, SparseMatrix};
use crate::measures::{equilibrium, gibbs_construct, CylinderMeasure};
use crate::potential::{fingerprint, PotentialSeq};
use crate::pressure::{topological_pressure, PressureOptions, DEFAULT_STEP};
use crate::scalar::Scalar;
use crate::shift::{ShiftModel, Symbol, Word};

pub const DEFAULT_RADIUS: f64 = 1e-4;
pub const DEFAULT_DEPTH: usize = 6;
pub const MONOTONE_TOLERANCE: f64 = 1e-8;

/// Identifies a (shift, potential) pair across traces and reports.
pub fn pair_fingerprint<T: Scalar>(shift: &ShiftModel, pot: &PotentialSeq<T>) -> String {
    fingerprint(&format!("{shift:?}|{}", pot.fingerprint()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnealRecord<T> {
    pub t: T,
    pub p: T,
    pub l: T,
    pub h: T,
    /// Depth-`d` cylinder masses.
    pub marginals: Vec<(Word, T)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster<T> {
    /// Schedule value whose measure represents the cluster.
    pub representative: T,
    pub members: Vec<T>,
    pub marginals: Vec<(Word, T)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnealTrace<T> {
    pub fingerprint: String,
    pub depth: usize,
    pub radius: T,
    pub route: &'static str,
    pub records: Vec<AnnealRecord<T>>,
    /// Clusters of the second half of the schedule.
    pub clusters: Vec<Cluster<T>>,
    /// `H` nonincreasing within the monotone tolerance.
    pub h_nonincreasing: bool,
    /// `L` nondecreasing within the monotone tolerance.
    pub l_nondecreasing: bool,
    /// Smallest `H(t_i) - H(t_{i+1})`.
    pub min_h_drop: Option<T>,
    /// Smallest `L(t_{i+1}) - L(t_i)`.
    pub min_l_rise: Option<T>,
    /// Why the schedule stopped early, if it did.
    pub status: Option<String>,
    #[serde(skip)]
    pub measures: Vec<CylinderMeasure<T>>,
}

impl<T: Scalar> AnnealTrace<T> {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,P,L,H\n");
        for r in &self.records {
            out.push_str(&format!("{},{},{},{}\n", r.t, r.p, r.l, r.h));
        }
        out
    }

    /// Cluster holding the last schedule value.
    pub fn final_cluster(&self) -> Option<&Cluster<T>> {
        let last = self.records.last()?.t;
        self.clusters.iter().find(|c| c.members.contains(&last))
    }
}

pub fn validate_schedule<T: Scalar>(schedule: &[T]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::validation("schedule", "schedule must not be empty"));
    }
    if let Some(&t) = schedule.iter().find(|&&t| !(t > T::one())) {
        return Err(Error::validation("t", format!("t must exceed 1 (got {t})")));
    }
    if schedule.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::validation("schedule", "schedule must be strictly ascending"));
    }
    Ok(())
}

fn anneal_point<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    depth: usize,
    options: PressureOptions,
) -> Result<(T, T, T, CylinderMeasure<T>)> {
    if pot.is_additive() {
        let eq = equilibrium(shift, pot, t, depth)?;
        return Ok((eq.pressure, eq.lyapunov, eq.entropy, eq.measure));
    }
    let h = T::of(DEFAULT_STEP);
    let p = |s: T| {
        topological_pressure(shift, pot, s, 1..=options.max_length, options.word_budget)
            .map(|e| e.value)
    };
    let (pt, up, down) = (p(t)?, p(t + h)?, p(t - h)?);
    let l = (up - down) / (h + h);
    let mu = gibbs_construct(shift, pot, t, 2 * depth, depth)?;
    Ok((pt, l, pt - t * l, mu))
}

/// Equilibrium states along an ascending schedule in `(1, ∞)`.
pub fn anneal<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    schedule: &[T],
    depth: usize,
    radius: T,
    options: PressureOptions,
) -> Result<AnnealTrace<T>> {
    validate_schedule(schedule)?;
    if depth == 0 {
        return Err(Error::validation("depth", "depth must be positive"));
    }
    if !(radius >= T::zero()) {
        return Err(Error::validation("radius", "cluster radius must be nonnegative"));
    }
    let mut records = Vec::with_capacity(schedule.len());
    let mut measures = Vec::with_capacity(schedule.len());
    let mut status = None;
    for &t in schedule {
        match anneal_point(shift, pot, t, depth, options) {
            Ok((p, l, h, mu)) => {
                let marginals = match mu.level(mu.depth()) {
                    Ok(level) => level.iter().map(|(w, &v)| (w.clone(), v)).collect(),
                    Err(e) => return Err(e),
                };
                records.push(AnnealRecord { t, p, l, h, marginals });
                measures.push(mu);
            }
            Err(e) => {
                status = Some(format!("stopped at t = {t}: {e}"));
                break;
            }
        }
    }
    let tol = T::of(MONOTONE_TOLERANCE);
    let h_drops: Vec<T> = records.windows(2).map(|r| r[0].h - r[1].h).collect();
    let l_rises: Vec<T> = records.windows(2).map(|r| r[1].l - r[0].l).collect();
    let min = |v: &[T]| v.iter().copied().reduce(T::min);
    let clusters = cluster(&records, &measures, radius);
    Ok(AnnealTrace {
        fingerprint: pair_fingerprint(shift, pot),
        depth,
        radius,
        route: if pot.is_additive() { "transfer" } else { "cylinder-sup" },
        h_nonincreasing: h_drops.iter().all(|&d| d >= -tol),
        l_nondecreasing: l_rises.iter().all(|&d| d >= -tol),
        min_h_drop: min(&h_drops),
        min_l_rise: min(&l_rises),
        records,
        clusters,
        status,
        measures,
    })
}

/// Leader clustering of the second half of the schedule under the
/// max-cylinder distance.
fn cluster<T: Scalar>(
    records: &[AnnealRecord<T>],
    measures: &[CylinderMeasure<T>],
    radius: T,
) -> Vec<Cluster<T>> {
    let mut leaders: Vec<usize> = Vec::new();
    let mut clusters: Vec<Cluster<T>> = Vec::new();
    for i in records.len() / 2..records.len() {
        let hit = leaders
            .iter()
            .position(|&j| measures[j].distance(&measures[i]) <= radius);
        match hit {
            Some(k) => clusters[k].members.push(records[i].t),
            None => {
                leaders.push(i);
                clusters.push(Cluster {
                    representative: records[i].t,
                    members: vec![records[i].t],
                    marginals: records[i].marginals.clone(),
                });
            }
        }
    }
    clusters
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cycle<T> {
    /// Vertices in order, starting from the smallest.
    pub word: Word,
    pub mean: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleMethod {
    Enumeration,
    Karp,
}

/// Largest alphabet handled by exhaustive simple-cycle enumeration.
pub const ENUMERATION_LIMIT: usize = 8;
pub const OPTIMALITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximizingReport<T> {
    pub fingerprint: String,
    /// `β(f)`, the maximum cycle mean.
    pub beta: T,
    pub method: CycleMethod,
    /// Optimal simple cycles (all of them under enumeration, one under Karp).
    pub optimal_cycles: Vec<Cycle<T>>,
    pub delta: T,
    pub edges: Vec<(Symbol, Symbol)>,
    /// `log` of the spectral radius of the subgraph.
    pub entropy: T,
    #[serde(skip)]
    pub subshift: Option<ShiftModel>,
}

fn vertex_weights<T: Scalar>(shift: &ShiftModel, f: &PotentialSeq<T>) -> Result<Vec<T>> {
    if !shift.is_finite() {
        return Err(Error::validation("shift", "a finite shift is required"));
    }
    if !f.is_additive() || f.memory() != 1 {
        return Err(Error::validation(
            "potential",
            "the cycle oracle needs a depth-1 additive potential",
        ));
    }
    shift.alphabet().iter().map(|&a| f.eval_fn(&[a])).collect()
}

/// Every simple cycle, each listed once from its smallest vertex.
fn simple_cycles(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn dfs(
        start: usize,
        v: usize,
        succ: &[Vec<usize>],
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &w in &succ[v] {
            if w == start {
                out.push(path.clone());
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                dfs(start, w, succ, on_path, path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; succ.len()];
    for s in 0..succ.len() {
        let mut path = vec![s];
        on_path[s] = true;
        dfs(s, s, succ, &mut on_path, &mut path, &mut out);
        on_path[s] = false;
    }
    out
}

fn mean<T: Scalar>(cycle: &[usize], w: &[T]) -> T {
    cycle.iter().map(|&i| w[i]).sum::<T>() / T::of_usize(cycle.len())
}

/// Karp's recurrence; returns `β` and one cycle attaining it.
fn karp<T: Scalar>(succ: &[Vec<usize>], w: &[T]) -> (T, Vec<usize>) {
    let n = succ.len();
    let ninf = T::neg_infinity();
    // d[k][v]: heaviest walk with k edges ending at v; weight of an edge is that of its source
    let mut d = vec![vec![ninf; n]; n + 1];
    let mut back = vec![vec![usize::MAX; n]; n + 1];
    d[0].iter_mut().for_each(|x| *x = T::zero());
    for k in 0..n {
        for u in 0..n {
            if d[k][u] == ninf {
                continue;
            }
            for &v in &succ[u] {
                let cand = d[k][u] + w[u];
                if cand > d[k + 1][v] {
                    d[k + 1][v] = cand;
                    back[k + 1][v] = u;
                }
            }
        }
    }
    let mut best = (ninf, 0);
    for v in 0..n {
        if d[n][v] == ninf {
            continue;
        }
        let worst = (0..n)
            .filter(|&k| d[k][v] != ninf)
            .map(|k| (d[n][v] - d[k][v]) / T::of_usize(n - k))
            .fold(T::infinity(), T::min);
        if worst > best.0 {
            best = (worst, v);
        }
    }
    // the n-edge walk into the best vertex repeats a vertex; its cycles include an optimal one
    let mut walk = vec![best.1];
    let mut v = best.1;
    for k in (1..=n).rev() {
        v = back[k][v];
        walk.push(v);
    }
    walk.reverse();
    let mut cycle = Vec::new();
    let mut cycle_mean = ninf;
    for i in 0..walk.len() {
        for j in i + 1..walk.len() {
            if walk[j] == walk[i] {
                let c = canonical(&walk[i..j]);
                let m = mean(&c, w);
                if m > cycle_mean {
                    cycle_mean = m;
                    cycle = c;
                }
                break;
            }
        }
    }
    (best.0, cycle)
}

fn canonical(cycle: &[usize]) -> Vec<usize> {
    let k = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle[k..].iter().chain(&cycle[..k]).copied().collect()
}

fn to_cycle<T: Scalar>(shift: &ShiftModel, c: &[usize], w: &[T]) -> Cycle<T> {
    Cycle {
        word: Word::new(c.iter().map(|&i| shift.alphabet()[i]).collect::<Vec<_>>()),
        mean: mean(c, w),
    }
}

/// `β(f) = max` cycle mean, with optimal simple cycles in lexicographic order.
pub fn max_mean_cycle<T: Scalar>(
    shift: &ShiftModel,
    f: &PotentialSeq<T>,
) -> Result<(T, CycleMethod, Vec<Cycle<T>>)> {
    let w = vertex_weights(shift, f)?;
    let succ = shift.successor_indices()?;
    let tol = T::of(OPTIMALITY_TOLERANCE);
    if succ.len() <= ENUMERATION_LIMIT {
        let cycles = simple_cycles(succ);
        let beta = cycles.iter().map(|c| mean(c, &w)).fold(T::neg_infinity(), T::max);
        let mut optimal: Vec<Vec<usize>> =
            cycles.into_iter().filter(|c| mean(c, &w) >= beta - tol).collect();
        optimal.sort();
        let optimal = optimal.iter().map(|c| to_cycle(shift, c, &w)).collect();
        Ok((beta, CycleMethod::Enumeration, optimal))
    } else {
        let (beta, c) = karp(succ, &w);
        Ok((beta, CycleMethod::Karp, vec![to_cycle(shift, &c, &w)]))
    }
}

/// `β(f)` and one optimal cycle by Karp's recurrence, whatever the alphabet size.
pub fn max_mean_cycle_karp<T: Scalar>(shift: &ShiftModel, f: &PotentialSeq<T>) -> Result<(T, Cycle<T>)> {
    let w = vertex_weights(shift, f)?;
    let (beta, c) = karp(shift.successor_indices()?, &w);
    Ok((beta, to_cycle(shift, &c, &w)))
}

/// Heaviest path weights into `target` under `w - β`, which has no positive cycles.
fn heaviest_into<T: Scalar>(succ: &[Vec<usize>], w: &[T], beta: T, target: usize) -> Vec<T> {
    let n = succ.len();
    let mut best = vec![T::neg_infinity(); n];
    best[target] = T::zero();
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            for &v in &succ[u] {
                if best[v] != T::neg_infinity() {
                    let cand = best[v] + w[u] - beta;
                    if cand > best[u] {
                        best[u] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    best
}

/// Subgraph spanned by the simple cycles of mean `>= β - δ`, and its entropy.
pub fn maximizing_subshift<T: Scalar>(
    shift: &ShiftModel,
    f: &PotentialSeq<T>,
    delta: T,
) -> Result<MaximizingReport<T>> {
    if !(delta >= T::zero()) {
        return Err(Error::validation("delta", "delta must be nonnegative"));
    }
    let (beta, method, optimal_cycles) = max_mean_cycle(shift, f)?;
    let w = vertex_weights(shift, f)?;
    let succ = shift.successor_indices()?;
    let tol = T::of(OPTIMALITY_TOLERANCE);
    let mut edges = BTreeSet::new();
    match method {
        CycleMethod::Enumeration => {
            for c in simple_cycles(succ) {
                if mean(&c, &w) >= beta - delta - tol {
                    for k in 0..c.len() {
                        edges.insert((c[k], c[(k + 1) % c.len()]));
                    }
                }
            }
        }
        CycleMethod::Karp => {
            // edge u -> v kept when some closed walk through it loses at most δ against β
            for u in 0..succ.len() {
                let into_u = heaviest_into(succ, &w, beta, u);
                for &v in &succ[u] {
                    if into_u[v] != T::neg_infinity() && w[u] - beta + into_u[v] >= -delta - tol {
                        edges.insert((u, v));
                    }
                }
            }
        }
    }
    let alphabet = shift.alphabet();
    let edges: Vec<(Symbol, Symbol)> = edges.into_iter().map(|(u, v)| (alphabet[u], alphabet[v])).collect();
    let vertices: Vec<Symbol> = edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index = |s: Symbol| vertices.binary_search(&s).expect("vertex of an edge");
    let mut adj = SparseMatrix::new(vertices.len());
    for &(u, v) in &edges {
        adj.push(index(u), index(v), T::one());
    }
    let entropy = spectral_radius(&adj)?.ln();
    let subshift = ShiftModel::from_edges(&vertices, &edges).ok();
    Ok(MaximizingReport {
        fingerprint: pair_fingerprint(shift, f),
        beta,
        method,
        optimal_cycles,
        delta,
        edges,
        entropy,
        subshift,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check<T> {
    pub name: &'static str,
    pub value: T,
    pub target: T,
    pub residual: T,
    pub tolerance: T,
    pub pass: bool,
}

impl<T: Scalar> Check<T> {
    fn new(name: &'static str, value: T, target: T, tolerance: T) -> Self {
        let residual = (value - target).abs();
        Check {
            name,
            value,
            target,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroTempVerdict<T> {
    pub t_max: T,
    pub checks: Vec<Check<T>>,
    pub assumptions: Vec<String>,
    pub pass: bool,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_LEAKAGE: f64 = 1e-2;

/// Compares the end of an annealing trace with the cycle oracle: `L -> β`,
/// `H ->` maximizing entropy, and the final cluster living on the
/// maximizing subshift.
pub fn zero_temp_report<T: Scalar>(
    trace: &AnnealTrace<T>,
    report: &MaximizingReport<T>,
    tolerance: T,
    leakage: T,
) -> Result<ZeroTempVerdict<T>> {
    if trace.fingerprint != report.fingerprint {
        return Err(Error::validation(
            "fingerprint",
            format!(
                "trace {} and oracle {} describe different shift/potential pairs",
                trace.fingerprint, report.fingerprint
            ),
        ));
    }
    let Some(last) = trace.records.last() else {
        return Err(Error::validation("trace", "trace has no records"));
    };
    let mut checks = vec![
        Check::new("lyapunov", last.l, report.beta, tolerance),
        Check::new("entropy", last.h, report.entropy, tolerance),
    ];
    if let (Some(sub), Some(mu)) = (&report.subshift, trace.measures.last()) {
        checks.push(Check::new("support", mu.mass_on(sub), T::one(), leakage));
    }
    let mut assumptions = vec![
        "maximizing entropy taken as log spectral radius of the δ-optimal cycle subgraph".to_string(),
    ];
    if report.method == CycleMethod::Karp && report.delta > T::zero() {
        assumptions.push("δ-optimal edges located from closed walks, not simple cycles".into());
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(ZeroTempVerdict {
        t_max: last.t,
        checks,
        assumptions,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bernoulli() -> PotentialSeq<f64> {
        PotentialSeq::symbolwise(&[(0, 0.0), (1, -1.0)]).unwrap()
    }

    fn golden_pot() -> PotentialSeq<f64> {
        PotentialSeq::symbolwise(&[(0, -1.0), (1, 0.0)]).unwrap()
    }

    fn schedule(hi: usize) -> Vec<f64> {
        (2..=hi).map(|t| t as f64).collect()
    }

    #[test]
    fn cycle_oracle_examples() {
        let full = ShiftModel::full(2);
        let (beta, _, cycles) = max_mean_cycle(&full, &bernoulli()).unwrap();
        assert_eq!(beta, 0.0);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].word, Word::new([0]));
        let g = ShiftModel::golden_mean();
        let (beta, _, cycles) = max_mean_cycle(&g, &golden_pot()).unwrap();
        assert_eq!(beta, -0.5);
        assert_eq!(cycles[0].word, Word::new([0, 1]));
        let c = PotentialSeq::constant(&[0, 1], 0.7).unwrap();
        let (beta, _, cycles) = max_mean_cycle(&full, &c).unwrap();
        assert!((beta - 0.7f64).abs() < 1e-15);
        assert_eq!(cycles.len(), 3);
    }

    #[test]
    fn maximizing_subshift_examples() {
        let full = ShiftModel::full(2);
        let c = PotentialSeq::constant(&[0, 1], 0.0).unwrap();
        let r = maximizing_subshift(&full, &c, 0.0).unwrap();
        assert_eq!(r.edges.len(), 4);
        assert!((r.entropy - 2f64.ln()).abs() < 1e-12);
        let r = maximizing_subshift(&full, &bernoulli(), 0.0).unwrap();
        assert_eq!(r.edges, vec![(0, 0)]);
        assert!(r.entropy.abs() < 1e-12);
        let r = maximizing_subshift(&ShiftModel::golden_mean(), &golden_pot(), 0.0).unwrap();
        assert_eq!(r.edges, vec![(0, 1), (1, 0)]);
        assert!(r.entropy.abs() < 1e-12);
    }

    #[test]
    fn karp_agrees_with_enumeration_on_a_ring() {
        // 10-cycle with chords; weights chosen so the 2-cycle {3, 4} wins
        let n = 10;
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.push((4, 3));
        edges.push((7, 2));
        let shift = ShiftModel::from_edges(&(0..n).collect::<Vec<_>>(), &edges).unwrap();
        let values: Vec<(usize, f64)> = (0..n).map(|i| (i, if i == 3 || i == 4 { 1.0 } else { -(i as f64) })).collect();
        let f = PotentialSeq::symbolwise(&values).unwrap();
        let (beta, method, cycles) = max_mean_cycle(&shift, &f).unwrap();
        assert_eq!(method, CycleMethod::Karp);
        assert!((beta - 1.0).abs() < 1e-12);
        assert_eq!(cycles[0].word, Word::new([3, 4]));
        let r = maximizing_subshift(&shift, &f, 0.0).unwrap();
        assert_eq!(r.edges, vec![(3, 4), (4, 3)]);
    }

    #[test]
    fn bernoulli_anneal_and_verdict() {
        let full = ShiftModel::full(2);
        let trace = anneal(&full, &bernoulli(), &schedule(10), 6, 0.05, Default::default()).unwrap();
        assert_eq!(trace.records.len(), 9);
        for r in &trace.records {
            let e = (-r.t).exp();
            let mu1: f64 = r.marginals.iter().filter(|(w, _)| w[0] == 1).map(|(_, v)| v).sum();
            assert!((mu1 - e / (1.0 + e)).abs() < 1e-12);
        }
        assert!(trace.h_nonincreasing && trace.l_nondecreasing);
        assert_eq!(trace.clusters.len(), 1);
        let report = maximizing_subshift(&full, &bernoulli(), 0.0).unwrap();
        let v = zero_temp_report(&trace, &report, DEFAULT_TOLERANCE, DEFAULT_LEAKAGE).unwrap();
        assert!(v.pass, "{v:?}");
        assert!((v.checks[0].residual - 4.539_786_870_243_442e-5).abs() < 1e-9);
        let other = maximizing_subshift(&full, &PotentialSeq::constant(&[0, 1], 0.0).unwrap(), 0.0)
            .unwrap();
        assert!(matches!(
            zero_temp_report(&trace, &other, DEFAULT_TOLERANCE, DEFAULT_LEAKAGE),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn constant_potential_is_temperature_free() {
        let full = ShiftModel::full(2);
        let c = PotentialSeq::constant(&[0, 1], 0.3).unwrap();
        let trace = anneal(&full, &c, &schedule(6), 4, DEFAULT_RADIUS, Default::default()).unwrap();
        assert!(trace.records.iter().all(|r| (r.h - 2f64.ln()).abs() < 1e-12));
        assert_eq!(trace.clusters.len(), 1);
        let report = maximizing_subshift(&full, &c, 0.0).unwrap();
        assert!(zero_temp_report(&trace, &report, 1e-9, 1e-9).unwrap().pass);
    }

    #[test]
    fn schedule_validation() {
        let full = ShiftModel::full(2);
        assert!(anneal(&full, &bernoulli(), &[0.5, 2.0], 4, 0.1, Default::default()).is_err());
        assert!(anneal(&full, &bernoulli(), &[3.0, 2.0], 4, 0.1, Default::default()).is_err());
    }
}
