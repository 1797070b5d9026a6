//! Invariant measures held as cylinder masses up to a finite depth, the Gibbs
//! constructions, entropy and Lyapunov estimates, and the tightness and tail
//! bounds.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::PowerIteration;
use crate::potential::{summability_report, PotentialSeq, Summability};
use crate::pressure::{transfer_matrix, transfer_pressure};
use crate::scalar::{phi, Scalar};
use crate::shift::{ShiftModel, Symbol, Word};

/// Masses of all cylinders of length `1..=depth`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderMeasure<T> {
    levels: Vec<BTreeMap<Word, T>>,
}

impl<T: Scalar> CylinderMeasure<T> {
    /// Builds the measure from its masses on words of one common length.
    /// Weights are rescaled to total 1; lower levels are prefix sums.
    pub fn from_top(weights: BTreeMap<Word, T>) -> Result<Self> {
        let depth = match weights.keys().next() {
            Some(w) => w.len(),
            None => return Err(Error::validation("weights", "measure has no atoms")),
        };
        if depth == 0 || weights.keys().any(|w| w.len() != depth) {
            return Err(Error::validation("weights", "words must share one positive length"));
        }
        if weights.values().any(|&v| !(v >= T::zero()) || !v.is_finite()) {
            return Err(Error::validation("weights", "weights must be finite and nonnegative"));
        }
        let total: T = weights.values().copied().sum();
        if !(total > T::zero()) {
            return Err(Error::validation("weights", "total mass is zero"));
        }
        let top: BTreeMap<Word, T> = weights.into_iter().map(|(w, v)| (w, v / total)).collect();
        let mut levels = vec![top];
        for k in (1..depth).rev() {
            let mut level = BTreeMap::new();
            for (w, &v) in &levels[0] {
                *level.entry(Word::from(&w[..k])).or_insert(T::zero()) += v;
            }
            levels.insert(0, level);
        }
        Ok(CylinderMeasure { levels })
    }

    /// Dirac mass at the fixed point `a^∞`.
    pub fn point_mass(a: Symbol, depth: usize) -> Result<Self> {
        Self::periodic_orbit(&[a], depth)
    }

    /// Uniform measure on the orbit of `w^∞`.
    pub fn periodic_orbit(w: &[Symbol], depth: usize) -> Result<Self> {
        if w.is_empty() || depth == 0 {
            return Err(Error::validation("orbit", "period and depth must be positive"));
        }
        let p = w.len();
        let share = T::one() / T::of_usize(p);
        let mut top = BTreeMap::new();
        for i in 0..p {
            let word: Vec<Symbol> = (0..depth).map(|k| w[(i + k) % p]).collect();
            *top.entry(Word::new(word)).or_insert(T::zero()) += share;
        }
        Self::from_top(top)
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Masses of the length-`n` cylinders with positive or recorded mass.
    pub fn level(&self, n: usize) -> Result<&BTreeMap<Word, T>> {
        if n == 0 || n > self.depth() {
            return Err(Error::validation(
                "depth",
                format!("length {n} outside 1..={}", self.depth()),
            ));
        }
        Ok(&self.levels[n - 1])
    }

    /// `μ[w]`; zero for words the measure does not charge.
    pub fn marginal(&self, w: &[Symbol]) -> Result<T> {
        if w.is_empty() {
            return Ok(T::one());
        }
        Ok(self.level(w.len())?.get(w).copied().unwrap_or_else(T::zero))
    }

    /// `max_{|w| < d} |μ[w] - sum_a μ[aw]|`.
    pub fn invariance_defect(&self) -> T {
        let mut defect = T::zero();
        for k in 1..self.depth() {
            let mut pre: BTreeMap<&[Symbol], T> = BTreeMap::new();
            for (w, &v) in &self.levels[k] {
                *pre.entry(&w[1..]).or_insert(T::zero()) += v;
            }
            for (w, &v) in &self.levels[k - 1] {
                let s = pre.get(w.symbols()).copied().unwrap_or_else(T::zero);
                defect = defect.max((v - s).abs());
            }
            for (w, &s) in &pre {
                if !self.levels[k - 1].contains_key(*w) {
                    defect = defect.max(s.abs());
                }
            }
        }
        defect
    }

    /// The same measure seen only up to depth `d`.
    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d == 0 || d > self.depth() {
            return Err(Error::validation("depth", format!("cannot truncate to {d}")));
        }
        Ok(CylinderMeasure {
            levels: self.levels[..d].to_vec(),
        })
    }

    /// Largest cylinder-mass discrepancy over the common depth.
    pub fn distance(&self, other: &Self) -> T {
        let d = self.depth().min(other.depth());
        let mut dist = T::zero();
        for k in 0..d {
            let (a, b) = (&self.levels[k], &other.levels[k]);
            for (w, &v) in a {
                dist = dist.max((v - b.get(w).copied().unwrap_or_else(T::zero)).abs());
            }
            for (w, &v) in b {
                if !a.contains_key(w) {
                    dist = dist.max(v.abs());
                }
            }
        }
        dist
    }

    /// Mass of the top-level cylinders admissible in `sub`.
    pub fn mass_on(&self, sub: &ShiftModel) -> T {
        self.levels[self.depth() - 1]
            .iter()
            .filter(|(w, _)| w.iter().all(|&s| sub.contains(s)) && sub.is_admissible(w))
            .map(|(_, &v)| v)
            .sum()
    }

    /// Depth-1 marginals in symbol order.
    pub fn symbol_marginals(&self) -> Vec<(Symbol, T)> {
        self.levels[0].iter().map(|(w, &v)| (w[0], v)).collect()
    }
}

#[derive(Serialize)]
struct Entry<'a, T> {
    word: &'a Word,
    weight: T,
}

#[derive(Serialize)]
struct Dump<'a, T> {
    depth: usize,
    entries: Vec<Entry<'a, T>>,
}

impl<T: Scalar + Serialize> Serialize for CylinderMeasure<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Dump {
            depth: self.depth(),
            entries: self.levels[self.depth() - 1]
                .iter()
                .map(|(word, &weight)| Entry { word, weight })
                .collect(),
        }
        .serialize(s)
    }
}

fn require_mixing(shift: &ShiftModel) -> Result<()> {
    if !shift.is_finite() {
        return Err(Error::validation("shift", "a finite shift is required"));
    }
    if !shift.is_primitive()? {
        return Err(Error::validation("shift", "shift is not topologically mixing"));
    }
    Ok(())
}

/// `ν_n[w] ∝ sup exp(t f_n)|[w]` on the length-`n` cylinders.
pub fn gibbs_pre_average<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    n: usize,
) -> Result<CylinderMeasure<T>> {
    require_mixing(shift)?;
    if n == 0 {
        return Err(Error::validation("n", "cylinder depth must be positive"));
    }
    let tpot = pot.scale(t);
    let mut logs = Vec::new();
    let mut failure = None;
    shift.for_each_word(n, |w| match tpot.eval_fn(w) {
        Ok(v) => logs.push((Word::from(w), v)),
        Err(e) => {
            failure.get_or_insert(e);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let max = logs.iter().map(|&(_, v)| v).fold(T::neg_infinity(), T::max);
    CylinderMeasure::from_top(logs.into_iter().map(|(w, v)| (w, (v - max).exp())).collect())
}

/// `(1/m) sum_{j<m} ν_n ∘ σ^{-j}` on the length-`(n - m)` cylinders.
pub fn gibbs_construct<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    n: usize,
    m: usize,
) -> Result<CylinderMeasure<T>> {
    if m == 0 {
        return Err(Error::validation("m", "averaging length must be positive"));
    }
    if m >= n {
        return Err(Error::DepthExhaustion { depth: n, averaging: m });
    }
    let nu = gibbs_pre_average(shift, pot, t, n)?;
    let d = n - m;
    let share = T::one() / T::of_usize(m);
    let mut top = BTreeMap::new();
    for (w, &v) in nu.level(n)? {
        for j in 0..m {
            *top.entry(Word::from(&w[j..j + d])).or_insert(T::zero()) += v * share;
        }
    }
    CylinderMeasure::from_top(top)
}

/// The invariant Gibbs measure of an additive locally constant potential,
/// from the Perron data of its transfer matrix, materialised to depth `d`.
pub fn rpf_equilibrium<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    d: usize,
) -> Result<CylinderMeasure<T>> {
    if d == 0 {
        return Err(Error::validation("depth", "depth must be positive"));
    }
    let tm = transfer_matrix(shift, pot, t)?;
    let solver = PowerIteration::default();
    let right = solver.run(&tm.matrix)?;
    let left = solver.run(&tm.matrix.transpose())?;
    let k = tm.states.len();
    if right.vector.iter().chain(&left.vector).any(|&x| !(x > T::zero())) {
        return Err(Error::NonConvergence {
            operation: "equilibrium measure".into(),
            message: "Perron vector is not strictly positive".into(),
        });
    }
    // stochastic matrix P_uv = W_uv r_v / (λ r_u), rows renormalised
    let rows: Vec<Vec<(usize, T)>> = (0..k)
        .map(|u| {
            let row: Vec<(usize, T)> = tm
                .matrix
                .row(u)
                .iter()
                .map(|&(v, w)| (v, w * right.vector[v]))
                .collect();
            let s: T = row.iter().map(|&(_, x)| x).sum();
            row.into_iter().map(|(v, x)| (v, x / s)).collect()
        })
        .collect();
    let mut pi: Vec<T> = (0..k).map(|u| left.vector[u] * right.vector[u]).collect();
    let s: T = pi.iter().copied().sum();
    pi.iter_mut().for_each(|x| *x = *x / s);
    for _ in 0..10_000 {
        let mut next = vec![T::zero(); k];
        for (u, row) in rows.iter().enumerate() {
            for &(v, p) in row {
                next[v] = next[v] + pi[u] * p;
            }
        }
        let s: T = next.iter().copied().sum();
        next.iter_mut().for_each(|x| *x = *x / s);
        let change = pi
            .iter()
            .zip(&next)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
        pi = next;
        if change <= T::epsilon() {
            break;
        }
    }
    let r = pot.memory();
    let depth = d.max(r);
    let mut top = BTreeMap::new();
    let mut path = Vec::with_capacity(depth);
    for u in 0..k {
        path.clear();
        path.extend_from_slice(&tm.states[u]);
        extend_paths(&rows, &tm.states, u, pi[u], depth, &mut path, &mut top);
    }
    CylinderMeasure::from_top(top)?.truncate(d)
}

fn extend_paths<T: Scalar>(
    rows: &[Vec<(usize, T)>],
    states: &[Word],
    u: usize,
    mass: T,
    depth: usize,
    path: &mut Vec<Symbol>,
    out: &mut BTreeMap<Word, T>,
) {
    if path.len() == depth {
        out.insert(Word::from(path.as_slice()), mass);
        return;
    }
    for &(v, p) in &rows[u] {
        path.push(*states[v].last().expect("states are nonempty"));
        extend_paths(rows, states, v, mass * p, depth, path, out);
        path.pop();
    }
}

/// `∫ f_1 dμ` for an additive locally constant potential; needs
/// `depth(μ) >= memory`.
pub fn mean_f1<T: Scalar>(mu: &CylinderMeasure<T>, pot: &PotentialSeq<T>) -> Result<T> {
    if !pot.is_additive() {
        return Err(Error::validation("potential", "an additive potential is required"));
    }
    let mut acc = T::zero();
    for (w, &p) in mu.level(pot.memory())? {
        if p > T::zero() {
            acc += p * pot.eval_at(w, 1)?;
        }
    }
    Ok(acc)
}

/// Pressure, Lyapunov exponent and entropy of the equilibrium state at `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equilibrium<T> {
    pub t: T,
    pub pressure: T,
    /// `∫ f dμ_t`
    pub lyapunov: T,
    /// `P - t L`
    pub entropy: T,
    pub measure: CylinderMeasure<T>,
}

/// Exact equilibrium data of an additive locally constant potential.
pub fn equilibrium<T: Scalar>(
    shift: &ShiftModel,
    pot: &PotentialSeq<T>,
    t: T,
    depth: usize,
) -> Result<Equilibrium<T>> {
    let pressure = transfer_pressure(shift, pot, t)?.value;
    let measure = rpf_equilibrium(shift, pot, t, depth.max(pot.memory()))?;
    let lyapunov = mean_f1(&measure, pot)?;
    let measure = measure.truncate(depth.max(1))?;
    Ok(Equilibrium {
        t,
        pressure,
        lyapunov,
        entropy: pressure - t * lyapunov,
        measure,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyEstimate<T> {
    /// `H_μ(ξ^n) / n` for `n = 1..=n_max`.
    pub per_n: Vec<T>,
    pub running_min: Vec<T>,
    /// `H_μ(ξ^n) - H_μ(ξ^{n-1})`, exact from `n = r + 1` for Markov measures of memory `r`.
    pub conditional: Vec<T>,
    /// The conditional estimate at `n_max`.
    pub value: T,
}

pub fn entropy_estimate<T: Scalar>(mu: &CylinderMeasure<T>, n_max: usize) -> Result<EntropyEstimate<T>> {
    if n_max == 0 || n_max > mu.depth() {
        return Err(Error::validation(
            "n_max",
            format!("n_max must lie in 1..={}", mu.depth()),
        ));
    }
    let mut per_n = Vec::with_capacity(n_max);
    let mut running_min = Vec::with_capacity(n_max);
    let mut conditional = Vec::with_capacity(n_max);
    let mut prev = T::zero();
    let mut min = T::infinity();
    for n in 1..=n_max {
        let h: T = mu.level(n)?.values().map(|&p| phi(p)).sum();
        let rate = h / T::of_usize(n);
        min = min.min(rate);
        per_n.push(rate);
        running_min.push(min);
        conditional.push(h - prev);
        prev = h;
    }
    let value = conditional[n_max - 1];
    Ok(EntropyEstimate {
        per_n,
        running_min,
        conditional,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LyapunovEstimate<T> {
    /// `a_n = sum_{|w| = n} μ[w] (sup f_n|[w] + C_aa) / n`.
    pub per_n: Vec<T>,
    pub running_min: Vec<T>,
    /// Bound `C_bv / n` on the error from using cylinder sups.
    pub sup_error: Vec<T>,
    /// Running minimum at `n_max`.
    pub value: T,
}

pub fn lyapunov<T: Scalar>(
    mu: &CylinderMeasure<T>,
    pot: &PotentialSeq<T>,
    n_max: usize,
) -> Result<LyapunovEstimate<T>> {
    if n_max == 0 || n_max > mu.depth() {
        return Err(Error::validation(
            "n_max",
            format!("n_max must lie in 1..={}", mu.depth()),
        ));
    }
    let c_aa = pot.c_aa();
    let mut per_n = Vec::with_capacity(n_max);
    let mut running_min = Vec::with_capacity(n_max);
    let mut sup_error = Vec::with_capacity(n_max);
    let mut min = T::infinity();
    for n in 1..=n_max {
        let mut acc = T::zero();
        for (w, &p) in mu.level(n)? {
            if p > T::zero() {
                acc = acc + p * (pot.eval_fn(w)? + c_aa);
            }
        }
        let a = acc / T::of_usize(n);
        min = min.min(a);
        per_n.push(a);
        running_min.push(min);
        sup_error.push(pot.c_bv() / T::of_usize(n));
    }
    Ok(LyapunovEstimate {
        value: min,
        per_n,
        running_min,
        sup_error,
    })
}

pub const EXACT_SLACK: f64 = 1e-9;
pub const CESARO_SLACK: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GibbsCertificate<T> {
    pub depth: usize,
    /// `min μ[w] / exp(t f_n(w) - n P)` over admissible `|w| <= depth`.
    pub c1_emp: T,
    pub c2_emp: T,
    /// `exp(t C_bv)`
    pub analytic_bound: T,
    pub slack: T,
    pub pressure: T,
    /// First admissible word carrying no mass, if any.
    pub null_cylinder: Option<Word>,
    pub pass: bool,
}

pub fn gibbs_certificate<T: Scalar>(
    shift: &ShiftModel,
    mu: &CylinderMeasure<T>,
    pot: &PotentialSeq<T>,
    t: T,
    pressure: T,
    depth: usize,
    slack: T,
) -> Result<GibbsCertificate<T>> {
    if depth == 0 || depth > mu.depth() {
        return Err(Error::validation(
            "depth",
            format!("depth must lie in 1..={}", mu.depth()),
        ));
    }
    let tpot = pot.scale(t);
    let mut c1 = T::infinity();
    let mut c2 = T::neg_infinity();
    let mut null = None;
    for n in 1..=depth {
        let level = mu.level(n)?;
        let mut failure = None;
        shift.for_each_word(n, |w| {
            let mass = level.get(w).copied().unwrap_or_else(T::zero);
            match tpot.eval_fn(w) {
                Ok(f) => {
                    let ratio = mass / (f - T::of_usize(n) * pressure).exp();
                    c1 = c1.min(ratio);
                    c2 = c2.max(ratio);
                    if !(mass > T::zero()) && null.is_none() {
                        null = Some(Word::from(w));
                    }
                }
                Err(e) => {
                    failure.get_or_insert(e);
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
    }
    let bound = (t * pot.c_bv()).exp();
    let pass = c2 <= bound * (T::one() + slack) && c1 > T::zero();
    Ok(GibbsCertificate {
        depth,
        c1_emp: c1,
        c2_emp: c2,
        analytic_bound: bound,
        slack,
        pressure,
        null_cylinder: null,
        pass,
    })
}

/// Search budget for thresholds and cutoffs.
pub const THRESHOLD_BUDGET: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TightSet<T> {
    /// `n_m` for `m = 1..=M`.
    pub thresholds: Vec<Symbol>,
    pub epsilon: T,
    pub reference: T,
    /// `(ε / 2^{m+1}) exp(S - C_bv)`
    pub targets: Vec<T>,
    /// Verified upper bounds on `sum_{i > n_m} exp(sup f_1|[i])`.
    pub tail_sums: Vec<T>,
}

impl<T: Scalar> TightSet<T> {
    /// Union bound `sum_m sum_{i > n_m} μ[i]` on the mass outside
    /// `K = {x : x_m <= n_m}`, valid for shift-invariant `μ`.
    pub fn mass_outside(&self, mu: &CylinderMeasure<T>) -> T {
        self.thresholds
            .iter()
            .map(|&n| {
                mu.symbol_marginals()
                    .into_iter()
                    .filter(|&(i, _)| i > n)
                    .map(|(_, p)| p)
                    .sum::<T>()
            })
            .sum()
    }
}

/// Upper bound on `sum_{i > n} exp(sup f_1|[i])` from the terms up to `k`
/// and the integral remainder beyond.
fn numeric_tail<T: Scalar>(pot: &PotentialSeq<T>, n: Symbol, k: Symbol) -> Result<T> {
    let law = pot.decay_law().expect("decay family");
    let mut s = T::zero();
    for i in n + 1..=k {
        s = s + pot.eval_fn(&[i])?.exp();
    }
    Ok(s + law.tail_bound(pot.multiplier(), k.max(n)) * (-pot.offset()).exp())
}

pub fn tight_set<T: Scalar>(
    pot: &PotentialSeq<T>,
    reference: T,
    epsilon: T,
    count: usize,
) -> Result<TightSet<T>> {
    if !(epsilon > T::zero()) {
        return Err(Error::validation("epsilon", "epsilon must be positive"));
    }
    if count == 0 {
        return Err(Error::validation("count", "at least one threshold is required"));
    }
    let targets: Vec<T> = (1..=count)
        .map(|m| epsilon / T::of(2f64.powi(m as i32 + 1)) * (reference - pot.c_bv()).exp())
        .collect();
    let Some(law) = pot.decay_law() else {
        let size = pot.domain().map(|d| d.len()).unwrap_or(0);
        return Ok(TightSet {
            thresholds: vec![size; count],
            epsilon,
            reference,
            tail_sums: vec![T::zero(); count],
            targets,
        });
    };
    if summability_report(pot, T::one(), 1)?.verdict != Summability::Summable {
        return Err(Error::validation("potential", "potential is not summable"));
    }
    let analytic = |n: Symbol| law.tail_bound(pot.multiplier(), n) * (-pot.offset()).exp();
    let mut thresholds = Vec::with_capacity(count);
    let mut tail_sums = Vec::with_capacity(count);
    let mut floor = 1;
    for &target in &targets {
        // analytic candidate by doubling and bisection
        let mut hi = floor.max(1);
        while !(analytic(hi) < target) {
            if hi > THRESHOLD_BUDGET {
                return Err(Error::Budget {
                    operation: "tight set".into(),
                    message: format!("no threshold below {THRESHOLD_BUDGET} meets the tail target {target}"),
                });
            }
            hi *= 2;
        }
        let mut lo = floor.max(1) - 1;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if analytic(mid) < target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // refine downward with partial sums and the remainder beyond 4 n + 1000
        let k = 4 * hi + 1000;
        let mut n = hi;
        let mut tail = numeric_tail(pot, n, k)?;
        while n > floor {
            let wider = tail + pot.eval_fn(&[n])?.exp();
            if wider < target {
                tail = wider;
                n -= 1;
            } else {
                break;
            }
        }
        floor = n;
        thresholds.push(n);
        tail_sums.push(tail);
    }
    Ok(TightSet {
        thresholds,
        epsilon,
        reference,
        targets,
        tail_sums,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginalCheck<T> {
    pub symbol: Symbol,
    pub mass: T,
    /// `exp(C_bv + sup f_1|[i] - S)`, absent for exempt symbols.
    pub bound: Option<T>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginalReport<T> {
    pub reference: T,
    pub symbols: Vec<MarginalCheck<T>>,
    pub exempt: Vec<Symbol>,
    pub all_pass: bool,
}

/// `μ[i] <= exp(C_bv + sup f_1|[i] - S)` for every symbol whose exponent is
/// negative.
pub fn marginal_bound_check<T: Scalar>(
    mu: &CylinderMeasure<T>,
    pot: &PotentialSeq<T>,
    reference: T,
) -> Result<MarginalReport<T>> {
    let mut masses: BTreeMap<Symbol, T> = mu.symbol_marginals().into_iter().collect();
    for s in pot.domain().unwrap_or_default() {
        masses.entry(s).or_insert(T::zero());
    }
    let mut symbols = Vec::with_capacity(masses.len());
    let mut exempt = Vec::new();
    for (symbol, mass) in masses {
        let exponent = pot.c_bv() + pot.eval_fn(&[symbol])? - reference;
        if exponent < T::zero() {
            let bound = exponent.exp();
            symbols.push(MarginalCheck {
                symbol,
                mass,
                bound: Some(bound),
                pass: mass <= bound,
            });
        } else {
            exempt.push(symbol);
            symbols.push(MarginalCheck {
                symbol,
                mass,
                bound: None,
                pass: true,
            });
        }
    }
    let all_pass = symbols.iter().all(|c| c.pass);
    Ok(MarginalReport {
        reference,
        symbols,
        exempt,
        all_pass,
    })
}

/// `-n C sum_{i > M} e^{t sup f_1|[i]} log(C e^{t sup f_1|[i]})` with
/// `C = exp(t C_bv + n t C_aa + t (n-1) sup f_1 - n P)`.
pub fn entropy_tail_bound<T: Scalar>(
    pot: &PotentialSeq<T>,
    t: T,
    pressure: T,
    n: usize,
    cutoff: Symbol,
) -> Result<T> {
    if n == 0 {
        return Err(Error::validation("n", "n must be positive"));
    }
    let nn = T::of_usize(n);
    let sup = pot.sup_f1();
    if !sup.is_finite() {
        return Err(Error::validation("potential", "sup f_1 is not finite"));
    }
    let log_c = t * pot.c_bv() + nn * t * pot.c_aa() + t * (nn - T::one()) * sup - nn * pressure;
    let inv_e = (-T::one()).exp();
    let x = |i: Symbol| -> Result<T> { Ok((log_c + t * pot.eval_fn(&[i])?).exp()) };
    let Some(law) = pot.decay_law() else {
        let tail: Vec<Symbol> = pot
            .domain()
            .unwrap_or_default()
            .into_iter()
            .filter(|&i| i > cutoff)
            .collect();
        let mut sum = T::zero();
        for &i in &tail {
            let xi = x(i)?;
            if !(xi < inv_e) {
                return Err(Error::ConditionNotMet {
                    required: *tail.last().expect("nonempty"),
                });
            }
            sum = sum + phi(xi);
        }
        return Ok(nn * sum);
    };
    if !(x(cutoff.max(1))? < inv_e) {
        let mut m = cutoff.max(1);
        while !(x(m)? < inv_e) {
            m += 1;
            if m > THRESHOLD_BUDGET {
                return Err(Error::Budget {
                    operation: "entropy tail bound".into(),
                    message: "applicability condition never holds".into(),
                });
            }
        }
        return Err(Error::ConditionNotMet { required: m });
    }
    let k = cutoff.max(1) + 20_000;
    let mut sum = T::zero();
    for i in cutoff + 1..=k {
        sum = sum + phi(x(i)?);
    }
    // remainder: phi(C' e^{s v}) = -log C' C' e^{s v} + C' (-s v) e^{s v}
    let s = t * pot.multiplier();
    let log_c1 = log_c - t * pot.offset();
    let c1 = log_c1.exp();
    let rest = (-log_c1).max(T::zero()) * c1 * law.tail_bound(s, k) + c1 * law.weighted_tail_bound(s, k);
    Ok(nn * (sum + rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::DecayLaw;
    use crate::pressure::transfer_pressure;
    use crate::shift::AmbientRule;

    fn bernoulli() -> PotentialSeq<f64> {
        PotentialSeq::symbolwise(&[(0, 0.0), (1, -1.0)]).unwrap()
    }

    fn zero(shift: &ShiftModel) -> PotentialSeq<f64> {
        PotentialSeq::constant(shift.alphabet(), 0.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn cylinder_measure_basics() {
        let mu = CylinderMeasure::<f64>::periodic_orbit(&[0, 1], 4).unwrap();
        close(mu.marginal(&[0]).unwrap(), 0.5, 1e-15);
        assert_eq!(mu.marginal(&[0, 0]).unwrap(), 0.0);
        assert_eq!(mu.invariance_defect(), 0.0);
        let json = serde_json::to_value(&mu).unwrap();
        assert_eq!(json["depth"], 4);
        assert_eq!(json["entries"][0]["word"], serde_json::json!([0, 1, 0, 1]));
        let dirac = CylinderMeasure::<f64>::point_mass(0, 3).unwrap();
        close(mu.distance(&dirac), 1.0, 1e-15);
        assert!(CylinderMeasure::<f64>::from_top(BTreeMap::new()).is_err());
    }

    #[test]
    fn gibbs_construct_examples() {
        let full = ShiftModel::full(2);
        let mu = gibbs_construct(&full, &zero(&full), 1.0, 6, 3).unwrap();
        assert_eq!(mu.depth(), 3);
        assert!(mu.level(3).unwrap().values().all(|&p| (p - 0.125).abs() < 1e-15));
        assert!(mu.invariance_defect() < 1e-15);
        let mu = gibbs_construct(&full, &bernoulli(), 1.0, 6, 3).unwrap();
        let p = 1.0 / (1.0 + (-1f64).exp());
        close(mu.marginal(&[0, 1, 0]).unwrap(), p * p * (1.0 - p), 1e-12);
        let g = ShiftModel::golden_mean();
        let nu = gibbs_pre_average(&g, &zero(&g), 1.0, 8).unwrap();
        assert_eq!(nu.level(8).unwrap().len(), 55);
        let phi_g = (1.0 + 5f64.sqrt()) / 2.0;
        let ratio = nu.marginal(&[0; 8]).unwrap() / (-8.0 * phi_g.ln()).exp();
        close(ratio, phi_g.powi(8) / 55.0, 1e-12);
        assert!(matches!(
            gibbs_construct(&full, &bernoulli(), 1.0, 3, 3),
            Err(Error::DepthExhaustion { .. })
        ));
    }

    #[test]
    fn rpf_examples() {
        let full = ShiftModel::full(2);
        let mu = rpf_equilibrium(&full, &bernoulli(), 1.0, 6).unwrap();
        close(mu.marginal(&[0]).unwrap(), 0.731_058_578_630_004_9, 1e-12);
        assert!(mu.invariance_defect() < 1e-12);
        let g = ShiftModel::golden_mean();
        let mu = rpf_equilibrium(&g, &zero(&g), 1.0, 10).unwrap();
        close(mu.marginal(&[0]).unwrap(), 0.723_606_797_749_979, 1e-12);
        assert!(mu.invariance_defect() < 1e-12);
        let single = ShiftModel::single_loop();
        let c = PotentialSeq::constant(&[0], 0.0).unwrap();
        let mu = rpf_equilibrium(&single, &c, 2.0, 3).unwrap();
        close(mu.marginal(&[0, 0, 0]).unwrap(), 1.0, 1e-15);
    }

    #[test]
    fn bernoulli_equilibrium_closed_form() {
        let full = ShiftModel::full(2);
        for t in [1.0, 2.0, 5.0] {
            let eq = equilibrium(&full, &bernoulli(), t, 3).unwrap();
            let e: f64 = (-t as f64).exp();
            close(eq.pressure, (1.0 + e).ln(), 1e-12);
            close(eq.lyapunov, -e / (1.0 + e), 1e-12);
            close(eq.entropy, (1.0 + e).ln() + t * e / (1.0 + e), 1e-12);
        }
    }

    #[test]
    fn entropy_and_lyapunov_examples() {
        let full = ShiftModel::full(2);
        let half = rpf_equilibrium(&full, &zero(&full), 1.0, 6).unwrap();
        let e = entropy_estimate(&half, 6).unwrap();
        assert!(e.per_n.iter().all(|&h| (h - 2f64.ln()).abs() < 1e-12));
        let dirac = CylinderMeasure::<f64>::point_mass(0, 5).unwrap();
        assert!(entropy_estimate(&dirac, 5).unwrap().per_n.iter().all(|&h| h == 0.0));
        let g = ShiftModel::golden_mean();
        let parry = rpf_equilibrium(&g, &zero(&g), 1.0, 8).unwrap();
        let e = entropy_estimate(&parry, 8).unwrap();
        close(e.value, ((1.0 + 5f64.sqrt()) / 2.0).ln(), 1e-6);
        assert!(e.per_n.windows(2).all(|p| p[1] <= p[0] + 1e-9));
        assert!(entropy_estimate(&parry, 9).is_err());

        close(lyapunov(&dirac, &bernoulli(), 5).unwrap().value, 0.0, 1e-15);
        close(lyapunov(&half, &bernoulli(), 6).unwrap().value, -0.5, 1e-12);
        let a = crate::linalg::Square::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let cocycle = PotentialSeq::matrix_cocycle([(0, a.clone()), (1, a)].into()).unwrap();
        close(lyapunov(&half, &cocycle, 6).unwrap().value, 2f64.ln(), 1e-12);
    }

    #[test]
    fn certificate_examples() {
        let full = ShiftModel::full(2);
        let pot = bernoulli();
        let p = transfer_pressure(&full, &pot, 1.0).unwrap().value;
        let mu = rpf_equilibrium(&full, &pot, 1.0, 6).unwrap();
        let cert = gibbs_certificate(&full, &mu, &pot, 1.0, p, 6, EXACT_SLACK).unwrap();
        assert!(cert.pass);
        close(cert.c1_emp, 1.0, 1e-9);
        close(cert.c2_emp, 1.0, 1e-9);
        let dirac = CylinderMeasure::point_mass(0, 4).unwrap();
        let cert = gibbs_certificate(&full, &dirac, &zero(&full), 1.0, 2f64.ln(), 4, EXACT_SLACK)
            .unwrap();
        assert_eq!(cert.c1_emp, 0.0);
        assert!(!cert.pass);
        let g = ShiftModel::golden_mean();
        let p = transfer_pressure(&g, &zero(&g), 1.0).unwrap().value;
        // shorter cylinders of the averaged measure exceed exp(t C_bv) = 1
        let nu = gibbs_construct(&g, &zero(&g), 1.0, 12, 6).unwrap();
        let cert = gibbs_certificate(&g, &nu, &zero(&g), 1.0, p, 6, CESARO_SLACK).unwrap();
        assert!(cert.c2_emp > 1.1 && !cert.pass, "{cert:?}");
        let nu = gibbs_pre_average(&g, &zero(&g), 1.0, 6).unwrap();
        let top = nu.level(6).unwrap().values().fold(0.0f64, |m, &v| m.max(v));
        assert!(top / (-6.0 * p).exp() <= 1.0);
    }

    fn neg_log(beta: f64) -> PotentialSeq<f64> {
        PotentialSeq::decay(DecayLaw::NegLog { beta })
    }

    #[test]
    fn tight_set_examples() {
        let s = -(2f64.ln());
        let ts = tight_set(&neg_log(2.0), s, 0.1, 3).unwrap();
        assert_eq!(ts.thresholds[0], 80);
        assert!(ts.tail_sums.iter().zip(&ts.targets).all(|(a, b)| a < b));
        let half = tight_set(&neg_log(2.0), s, 0.05, 3).unwrap();
        assert!(half.thresholds.iter().zip(&ts.thresholds).all(|(a, b)| a >= b));
        let finite = tight_set(&bernoulli(), 0.0, 0.1, 2).unwrap();
        assert_eq!(finite.thresholds, vec![2, 2]);
        assert!(tight_set(&neg_log(1.0), s, 0.1, 1).is_err());
    }

    #[test]
    fn marginal_checks() {
        let full = ShiftModel::full(2);
        let half = rpf_equilibrium(&full, &zero(&full), 1.0, 2).unwrap();
        assert!(marginal_bound_check(&half, &zero(&full), 0.0).unwrap().all_pass);
        let renewal = ShiftModel::truncation(AmbientRule::Renewal, 50).unwrap();
        let f = neg_log(2.0);
        let mu = rpf_equilibrium(&renewal, &f, 2.0, 1).unwrap();
        let r = marginal_bound_check(&mu, &f, -(2f64.ln())).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.exempt, vec![1]);
        let dirac = CylinderMeasure::point_mass(1, 2).unwrap();
        let r = marginal_bound_check(&dirac, &f, 0.0).unwrap();
        assert_eq!(r.exempt, vec![1]);
    }

    #[test]
    fn entropy_tail_examples() {
        let full = ShiftModel::full(2);
        assert_eq!(entropy_tail_bound(&zero(&full), 2.0, 2f64.ln(), 3, 2).unwrap(), 0.0);
        let f = neg_log(2.0);
        let renewal = ShiftModel::truncation(AmbientRule::Renewal, 200).unwrap();
        let p = transfer_pressure(&renewal, &f, 2.0).unwrap().value;
        let b100 = entropy_tail_bound(&f, 2.0, p, 3, 100).unwrap();
        let b200 = entropy_tail_bound(&f, 2.0, p, 3, 200).unwrap();
        assert!(b100 > 0.0 && b100.is_finite());
        assert!(b200 <= b100);
        assert!(matches!(
            entropy_tail_bound(&f, 2.0, -5.0, 3, 1),
            Err(Error::ConditionNotMet { .. })
        ));
    }
}
