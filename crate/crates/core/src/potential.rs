//! Almost-additive potential sequences `F = {f_n}` and their constants.
//!
//! Three families are supported:
//! * locally constant additive potentials, `f_n` the Birkhoff sum of a
//!   function of the first `r` symbols;
//! * additive potentials on the countable alphabet `{1, 2, ...}` whose
//!   one-symbol value follows a decay law;
//! * matrix cocycles `f_n(x) = log ||A_{x_1} ... A_{x_n}||` with the max row
//!   sum norm.
//!
//! Every potential carries an affine transform `t f_n - n c` so that scaling
//! by an inverse temperature and normalising never touch the family itself.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Square;
use crate::scalar::Scalar;
use crate::shift::{ShiftModel, Symbol, Word};

/// Value of `f_1` on the cylinder `[i]`, `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum DecayLaw<T> {
    /// `-beta * log i`
    NegLog { beta: T },
    /// `-c * i`
    Linear { c: T },
    /// `c` on every symbol.
    Constant { c: T },
}

impl<T: Scalar> DecayLaw<T> {
    pub fn value(&self, i: Symbol) -> T {
        let x = T::of_usize(i);
        match *self {
            DecayLaw::NegLog { beta } => -beta * x.ln(),
            DecayLaw::Linear { c } => -c * x,
            DecayLaw::Constant { c } => c,
        }
    }

    fn sup(&self) -> T {
        match *self {
            DecayLaw::NegLog { beta } if beta >= T::zero() => T::zero(),
            DecayLaw::Linear { c } if c >= T::zero() => -c,
            DecayLaw::Constant { c } => c,
            _ => T::infinity(),
        }
    }

    fn inf(&self) -> T {
        match *self {
            DecayLaw::NegLog { beta } if beta <= T::zero() => T::zero(),
            DecayLaw::Linear { c } if c <= T::zero() => -c,
            DecayLaw::Constant { c } => c,
            _ => T::neg_infinity(),
        }
    }

    /// Rate `a` such that `exp(s * value(i))` decays like `i^-a` (log law)
    /// or `e^{-a i}` (linear law), for scale `s > 0`.
    fn rate(&self, s: T) -> T {
        match *self {
            DecayLaw::NegLog { beta } => s * beta,
            DecayLaw::Linear { c } => s * c,
            DecayLaw::Constant { .. } => T::zero(),
        }
    }

    /// Upper bound on `sum_{i > n} exp(s * value(i))` for `s > 0`; `inf` when
    /// the series diverges.
    pub fn tail_bound(&self, s: T, n: Symbol) -> T {
        let a = self.rate(s);
        let nn = T::of_usize(n.max(1));
        match self {
            DecayLaw::NegLog { .. } if a > T::one() => nn.powf(T::one() - a) / (a - T::one()),
            DecayLaw::Linear { .. } if a > T::zero() => {
                (-a * (nn + T::one())).exp() / (T::one() - (-a).exp())
            }
            _ => T::infinity(),
        }
    }

    /// Upper bound on `sum_{i > n} (-s value(i)) exp(s value(i))`, valid once
    /// the summand is decreasing past `n`.
    pub fn weighted_tail_bound(&self, s: T, n: Symbol) -> T {
        let a = self.rate(s);
        let nn = T::of_usize(n.max(1));
        match self {
            DecayLaw::NegLog { .. } if a > T::one() && nn.ln() * a >= T::one() => {
                let am1 = a - T::one();
                a * nn.powf(-am1) * (nn.ln() / am1 + T::one() / (am1 * am1))
            }
            DecayLaw::Linear { .. } if a > T::zero() && a * nn >= T::one() => {
                (-a * nn).exp() * (nn + T::one() / a)
            }
            _ => T::infinity(),
        }
    }
}

/// The raw sequence `{f_n}` before scaling and normalisation.
#[derive(Clone, Debug, PartialEq)]
pub enum Family<T> {
    /// Additive, `f_n(x) = sum_{i<n} g(x_i ... x_{i+r-1})` where `g` is given on
    /// the words of length `depth` listed in `table`; windows missing from the
    /// table are treated as forbidden.
    LocallyConstant {
        depth: usize,
        table: BTreeMap<Word, T>,
    },
    /// Additive on `{1, 2, ...}` with `f_1|[i] = law(i)`.
    Decay(DecayLaw<T>),
    /// `f_n(x) = log ||A_{x_1} ... A_{x_n}||_inf` for strictly positive matrices.
    MatrixCocycle { matrices: BTreeMap<Symbol, Square<T>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants<T> {
    pub almost_additivity: T,
    pub bounded_variation: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSeq<T> {
    family: Family<T>,
    /// Declared constants of the raw family.
    declared: Constants<T>,
    multiplier: T,
    offset: T,
}

impl<T: Scalar> PotentialSeq<T> {
    /// Depth-`r` locally constant additive potential.
    pub fn locally_constant(depth: usize, table: BTreeMap<Word, T>) -> Result<Self> {
        if depth == 0 {
            return Err(Error::validation("depth", "depth must be at least 1"));
        }
        if table.is_empty() {
            return Err(Error::validation("values", "table must not be empty"));
        }
        if let Some(w) = table.keys().find(|w| w.len() != depth) {
            return Err(Error::validation(
                "values",
                format!("word '{w}' does not have length {depth}"),
            ));
        }
        let (lo, hi) = table
            .values()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let declared = Constants {
            almost_additivity: T::zero(),
            bounded_variation: T::of_usize(depth - 1) * (hi - lo),
        };
        Ok(Self::with_family(Family::LocallyConstant { depth, table }, declared))
    }

    /// Depth-1 potential from per-symbol values.
    pub fn symbolwise(values: &[(Symbol, T)]) -> Result<Self> {
        Self::locally_constant(
            1,
            values.iter().map(|&(s, v)| (Word::new([s]), v)).collect(),
        )
    }

    /// Constant potential `f_1 = c` on the given symbols.
    pub fn constant(symbols: &[Symbol], c: T) -> Result<Self> {
        Self::symbolwise(&symbols.iter().map(|&s| (s, c)).collect::<Vec<_>>())
    }

    pub fn decay(law: DecayLaw<T>) -> Self {
        Self::with_family(
            Family::Decay(law),
            Constants {
                almost_additivity: T::zero(),
                bounded_variation: T::zero(),
            },
        )
    }

    /// Matrix cocycle over strictly positive square matrices of equal size.
    /// The declared almost-additivity constant is `log κ`, where `κ` is the
    /// largest ratio between two entries of one column of one matrix.
    pub fn matrix_cocycle(matrices: BTreeMap<Symbol, Square<T>>) -> Result<Self> {
        let dim = match matrices.values().next() {
            Some(m) => m.dim(),
            None => return Err(Error::validation("matrices", "at least one matrix required")),
        };
        let mut kappa = T::one();
        for (s, m) in &matrices {
            if m.dim() != dim {
                return Err(Error::validation("matrices", "matrices must share one size"));
            }
            if !(m.min_entry() > T::zero()) {
                return Err(Error::validation(
                    "matrices",
                    format!("matrix of symbol {s} is not strictly positive"),
                ));
            }
            for col in 0..dim {
                let (lo, hi) = (0..dim).fold((T::infinity(), T::zero()), |(lo, hi), row| {
                    (lo.min(m.get(row, col)), hi.max(m.get(row, col)))
                });
                kappa = kappa.max(hi / lo);
            }
        }
        let declared = Constants {
            almost_additivity: kappa.ln(),
            bounded_variation: T::zero(),
        };
        Ok(Self::with_family(Family::MatrixCocycle { matrices }, declared))
    }

    fn with_family(family: Family<T>, declared: Constants<T>) -> Self {
        PotentialSeq {
            family,
            declared,
            multiplier: T::one(),
            offset: T::zero(),
        }
    }

    /// Overrides the declared constants of the raw family.
    pub fn with_declared(mut self, c_aa: T, c_bv: T) -> Self {
        self.declared = Constants {
            almost_additivity: c_aa,
            bounded_variation: c_bv,
        };
        self
    }

    pub fn family(&self) -> &Family<T> {
        &self.family
    }

    pub fn multiplier(&self) -> T {
        self.multiplier
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    pub fn is_additive(&self) -> bool {
        !matches!(self.family, Family::MatrixCocycle { .. })
    }

    /// Number of leading symbols that `f_1` depends on.
    pub fn memory(&self) -> usize {
        match &self.family {
            Family::LocallyConstant { depth, .. } => *depth,
            _ => 1,
        }
    }

    /// Symbols on which the family is defined, when finite.
    pub fn domain(&self) -> Option<Vec<Symbol>> {
        match &self.family {
            Family::LocallyConstant { table, .. } => Some(
                table
                    .keys()
                    .flat_map(|w| w.iter().copied())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect(),
            ),
            Family::MatrixCocycle { matrices } => Some(matrices.keys().copied().collect()),
            Family::Decay(_) => None,
        }
    }

    pub fn decay_law(&self) -> Option<&DecayLaw<T>> {
        match &self.family {
            Family::Decay(law) => Some(law),
            _ => None,
        }
    }

    /// `C_aa` of the transformed sequence.
    pub fn c_aa(&self) -> T {
        self.declared.almost_additivity * self.multiplier.abs()
    }

    /// `C_bv` of the transformed sequence.
    pub fn c_bv(&self) -> T {
        self.declared.bounded_variation * self.multiplier.abs()
    }

    pub fn declared(&self) -> Constants<T> {
        Constants {
            almost_additivity: self.c_aa(),
            bounded_variation: self.c_bv(),
        }
    }

    fn transform(&self, raw: T, n: usize) -> T {
        self.multiplier * raw - T::of_usize(n) * self.offset
    }

    fn check_symbol(&self, s: Symbol) -> Result<()> {
        let ok = match &self.family {
            Family::Decay(_) => s >= 1,
            Family::MatrixCocycle { matrices } => matrices.contains_key(&s),
            Family::LocallyConstant { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("symbol {s} is outside the potential's domain")))
        }
    }

    /// Raw value at a point whose first `n + memory - 1` symbols are `x`.
    fn raw_point(&self, x: &[Symbol], n: usize) -> Result<T> {
        for &s in x {
            self.check_symbol(s)?;
        }
        match &self.family {
            Family::LocallyConstant { depth, table } => {
                if x.len() + 1 < n + depth {
                    return Err(Error::Domain(format!(
                        "point needs {} symbols to evaluate f_{n}",
                        n + depth - 1
                    )));
                }
                let mut sum = T::zero();
                for i in 0..n {
                    let key = Word::from(&x[i..i + depth]);
                    match table.get(&key) {
                        Some(&v) => sum = sum + v,
                        None => {
                            return Err(Error::Domain(format!(
                                "window '{key}' is not in the potential's table"
                            )))
                        }
                    }
                }
                Ok(sum)
            }
            Family::Decay(law) => Ok(x[..n].iter().map(|&s| law.value(s)).sum()),
            Family::MatrixCocycle { matrices } => {
                let mut prod = matrices[&x[0]].clone();
                for s in &x[1..n] {
                    prod = prod.mul(&matrices[s]);
                }
                Ok(prod.row_sum_norm().ln())
            }
        }
    }

    /// Extreme of the raw `f_n` over continuations of `w` (locally constant
    /// family only; the others are constant on `n`-cylinders).
    fn raw_extreme(&self, w: &[Symbol], maximize: bool) -> Result<T> {
        let n = w.len();
        if n == 0 {
            return Err(Error::validation("word", "empty word"));
        }
        match &self.family {
            Family::LocallyConstant { depth, table } if *depth > 1 => {
                let symbols = self.domain().unwrap_or_default();
                let mut buf = w.to_vec();
                // fixed windows must exist regardless of the continuation
                for i in 0..n.saturating_sub(depth - 1) {
                    if !table.contains_key(&Word::from(&buf[i..i + depth])) {
                        return Err(Error::Domain(format!(
                            "word '{}' is not admissible for the potential",
                            Word::from(w)
                        )));
                    }
                }
                let best = extreme_continuation(table, *depth, n, &symbols, &mut buf, maximize);
                best.ok_or_else(|| {
                    Error::Domain(format!(
                        "word '{}' has no admissible continuation",
                        Word::from(w)
                    ))
                })
            }
            _ => self.raw_point(w, n),
        }
    }

    /// `sup f_n` over the cylinder `[w]`, `n = |w|`.
    pub fn eval_fn(&self, w: &[Symbol]) -> Result<T> {
        let raw = self.raw_extreme(w, self.multiplier >= T::zero())?;
        Ok(self.transform(raw, w.len()))
    }

    /// `inf f_n` over the cylinder `[w]`.
    pub fn eval_inf(&self, w: &[Symbol]) -> Result<T> {
        let raw = self.raw_extreme(w, self.multiplier < T::zero())?;
        Ok(self.transform(raw, w.len()))
    }

    /// `f_n(x)` at a point given by enough leading symbols
    /// (`n + memory - 1`).
    pub fn eval_at(&self, x: &[Symbol], n: usize) -> Result<T> {
        Ok(self.transform(self.raw_point(x, n)?, n))
    }

    /// `f_n` at the periodic point `w^∞`, `n = |w|`.
    pub fn eval_periodic(&self, w: &[Symbol]) -> Result<T> {
        let n = w.len();
        let r = self.memory();
        let x: Vec<Symbol> = (0..n + r - 1).map(|i| w[i % n]).collect();
        self.eval_at(&x, n)
    }

    /// Lexicographically least continuation of `w` long enough for
    /// [`eval_at`](Self::eval_at) with `n = |w|`.
    pub fn representative(&self, w: &[Symbol]) -> Result<Vec<Symbol>> {
        match &self.family {
            Family::LocallyConstant { depth, table } if *depth > 1 => {
                let symbols = self.domain().unwrap_or_default();
                let mut buf = w.to_vec();
                if first_continuation(table, *depth, w.len(), &symbols, &mut buf) {
                    Ok(buf)
                } else {
                    Err(Error::Domain(format!(
                        "word '{}' has no admissible continuation",
                        Word::from(w)
                    )))
                }
            }
            _ => Ok(w.to_vec()),
        }
    }

    /// `sup f_1` over the whole domain (may be `+inf`).
    pub fn sup_f1(&self) -> T {
        let (hi, lo) = match &self.family {
            Family::LocallyConstant { table, .. } => table
                .values()
                .fold((T::neg_infinity(), T::infinity()), |(hi, lo), &v| (hi.max(v), lo.min(v))),
            Family::Decay(law) => (law.sup(), law.inf()),
            Family::MatrixCocycle { matrices } => {
                matrices.values().fold((T::neg_infinity(), T::infinity()), |(hi, lo), m| {
                    let v = m.row_sum_norm().ln();
                    (hi.max(v), lo.min(v))
                })
            }
        };
        let raw = if self.multiplier >= T::zero() { hi } else { lo };
        if self.multiplier == T::zero() {
            return -self.offset;
        }
        self.transform(raw, 1)
    }

    /// `t F`.
    pub fn scale(&self, t: T) -> Self {
        PotentialSeq {
            multiplier: t * self.multiplier,
            offset: t * self.offset,
            ..self.clone()
        }
    }

    /// Replaces `f_n` by `f_n - n (sup f_1 + C_aa)`, which makes every `f_n <= 0`.
    pub fn normalize(&self) -> Result<Self> {
        let sup = self.sup_f1();
        if !sup.is_finite() {
            return Err(Error::validation("potential", "sup f_1 is not finite"));
        }
        Ok(PotentialSeq {
            offset: self.offset + sup + self.c_aa(),
            ..self.clone()
        })
    }

    /// Stable identifier of the potential, used to match traces and reports.
    pub fn fingerprint(&self) -> String {
        fingerprint(&format!("{:?}", self))
    }
}

pub(crate) fn fingerprint(s: &str) -> String {
    // FNV-1a, stable across runs and platforms
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn window_ok<T>(table: &BTreeMap<Word, T>, depth: usize, n: usize, buf: &[Symbol]) -> bool {
    let start = buf.len() - depth;
    start >= n || table.contains_key(&Word::from(&buf[start..]))
}

fn extreme_continuation<T: Scalar>(
    table: &BTreeMap<Word, T>,
    depth: usize,
    n: usize,
    symbols: &[Symbol],
    buf: &mut Vec<Symbol>,
    maximize: bool,
) -> Option<T> {
    if buf.len() == n + depth - 1 {
        return Some((0..n).map(|i| table[&Word::from(&buf[i..i + depth])]).sum());
    }
    let mut best: Option<T> = None;
    for &s in symbols {
        buf.push(s);
        if buf.len() < depth || window_ok(table, depth, n, buf) {
            if let Some(v) = extreme_continuation(table, depth, n, symbols, buf, maximize) {
                best = Some(match best {
                    None => v,
                    Some(b) if maximize => b.max(v),
                    Some(b) => b.min(v),
                });
            }
        }
        buf.pop();
    }
    best
}

fn first_continuation<T>(
    table: &BTreeMap<Word, T>,
    depth: usize,
    n: usize,
    symbols: &[Symbol],
    buf: &mut Vec<Symbol>,
) -> bool {
    if buf.len() >= depth && !window_ok(table, depth, n, buf) {
        return false;
    }
    if buf.len() == n + depth - 1 {
        return (0..n).all(|i| table.contains_key(&Word::from(&buf[i..i + depth])));
    }
    for &s in symbols {
        buf.push(s);
        if first_continuation(table, depth, n, symbols, buf) {
            return true;
        }
        buf.pop();
    }
    false
}

/// Empirical almost-additivity and variation constants. Empirical values are
/// lower bounds for the true constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantsReport<T> {
    pub depth: usize,
    pub c_aa_emp: T,
    pub c_bv_emp: T,
    pub sup_f1: T,
    /// `(n, var_n(f_n))`
    pub variation: Vec<(usize, T)>,
    /// Largest almost-additivity defect among words of each total length.
    pub defect_by_length: Vec<(usize, T)>,
    pub declared: Constants<T>,
    pub within_declared: bool,
    pub growth_flagged: bool,
}

pub fn constants_report<T: Scalar>(
    pot: &PotentialSeq<T>,
    shift: &ShiftModel,
    depth: usize,
) -> Result<ConstantsReport<T>> {
    if !shift.is_finite() {
        return Err(Error::UnsupportedEnumeration(
            "constants need a finite truncation".into(),
        ));
    }
    let mut variation = Vec::with_capacity(depth);
    let mut defect_by_length = Vec::with_capacity(depth);
    let mut first_err = None;
    for len in 1..=depth {
        let mut var = T::zero();
        let mut defect = T::zero();
        shift.for_each_word(len, |w| {
            let step = || -> Result<(T, T)> {
                let v = pot.eval_fn(w)? - pot.eval_inf(w)?;
                let x = pot.representative(w)?;
                let whole = pot.eval_at(&x, len)?;
                let mut d = T::zero();
                for split in 1..len {
                    let left = pot.eval_at(&x, split)?;
                    let right = pot.eval_at(&x[split..], len - split)?;
                    d = d.max((whole - left - right).abs());
                }
                Ok((v, d))
            };
            match step() {
                Ok((v, d)) => {
                    var = var.max(v);
                    defect = defect.max(d);
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        })?;
        if let Some(e) = first_err.take() {
            return Err(e);
        }
        variation.push((len, var));
        defect_by_length.push((len, defect));
    }
    let c_aa_emp = defect_by_length.iter().map(|p| p.1).fold(T::zero(), T::max);
    let c_bv_emp = variation.iter().map(|p| p.1).fold(T::zero(), T::max);
    let declared = pot.declared();
    let slack = T::of(1e-9);
    let within_declared = c_aa_emp <= declared.almost_additivity + slack
        && c_bv_emp <= declared.bounded_variation + slack;
    let rising = |xs: &[(usize, T)]| {
        xs.len() >= 3
            && xs[xs.len() - 3..]
                .windows(2)
                .all(|p| p[1].1 > p[0].1 + slack)
    };
    let growth_flagged = rising(&variation[1..]) || rising(&defect_by_length[1..]);
    let sup_f1 = shift
        .alphabet()
        .iter()
        .map(|&s| pot.eval_fn(&[s]))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(T::neg_infinity(), T::max);
    Ok(ConstantsReport {
        depth,
        c_aa_emp,
        c_bv_emp,
        sup_f1,
        variation,
        defect_by_length,
        declared,
        within_declared,
        growth_flagged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summability {
    Summable,
    NotSummable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummabilityReport<T> {
    pub truncation: Symbol,
    pub t: T,
    /// `sum_{i <= N} exp(sup f_1|[i])`
    pub partial_sum: T,
    /// Bound on the remainder beyond `N`.
    pub tail_bound: T,
    /// `sum_{i <= N} sup(-t f_1|[i]) exp(sup t f_1|[i])`, only for `t > 1`.
    pub weighted_partial_sum: Option<T>,
    pub weighted_tail_bound: Option<T>,
    pub verdict: Summability,
}

pub fn summability_report<T: Scalar>(
    pot: &PotentialSeq<T>,
    t: T,
    truncation: Symbol,
) -> Result<SummabilityReport<T>> {
    let symbols: Vec<Symbol> = match pot.domain() {
        Some(d) => d,
        None => (1..=truncation).collect(),
    };
    let mut partial = T::zero();
    let mut weighted = T::zero();
    for &i in &symbols {
        let s = pot.eval_fn(&[i])?;
        partial = partial + s.exp();
        weighted = weighted + (-t * s) * (t * s).exp();
    }
    let (tail, wtail) = match pot.decay_law() {
        Some(law) => {
            // the law applies to the raw family; fold the current transform in
            let m = pot.multiplier();
            let shift = (-pot.offset()).exp();
            let tail = if m > T::zero() { law.tail_bound(m, truncation) * shift } else { T::infinity() };
            let wtail = if m > T::zero() && pot.offset() == T::zero() {
                law.weighted_tail_bound(t * m, truncation)
            } else {
                T::infinity()
            };
            (tail, wtail)
        }
        None => (T::zero(), T::zero()),
    };
    let verdict = if tail.is_finite() {
        Summability::Summable
    } else {
        Summability::NotSummable
    };
    let with_t = t > T::one();
    Ok(SummabilityReport {
        truncation,
        t,
        partial_sum: partial,
        tail_bound: tail,
        weighted_partial_sum: with_t.then_some(weighted),
        weighted_tail_bound: with_t.then_some(wtail),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bernoulli() -> PotentialSeq<f64> {
        PotentialSeq::symbolwise(&[(0, 0.0), (1, -1.0)]).unwrap()
    }

    fn cocycle() -> PotentialSeq<f64> {
        let a0 = Square::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let a1 = Square::from_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]]).unwrap();
        PotentialSeq::matrix_cocycle([(0, a0), (1, a1)].into()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let zero = PotentialSeq::constant(&[0, 1], 0.0).unwrap();
        assert_eq!(zero.eval_fn(&[0, 1, 1]).unwrap(), 0.0);
        assert!((cocycle().eval_fn(&[0, 1]).unwrap() - 5f64.ln()).abs() < 1e-12);
        let decay = PotentialSeq::decay(DecayLaw::NegLog { beta: 2.0 });
        assert!((decay.eval_fn(&[3]).unwrap() + 2.0 * 3f64.ln()).abs() < 1e-12);
        assert!(matches!(decay.eval_fn(&[0]), Err(Error::Domain(_))));
        assert!(matches!(cocycle().eval_fn(&[2]), Err(Error::Domain(_))));
    }

    #[test]
    fn declared_cocycle_constant() {
        assert!((cocycle().c_aa() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(cocycle().c_bv(), 0.0);
        let bad = Square::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!(PotentialSeq::matrix_cocycle([(0, bad)].into()).is_err());
    }

    #[test]
    fn depth_two_cylinder_extremes() {
        // g(ab) on the golden mean shift; f_1 on [0] depends on the next symbol
        let table: BTreeMap<Word, f64> = [
            (Word::new([0, 0]), -1.0),
            (Word::new([0, 1]), 0.5),
            (Word::new([1, 0]), 0.25),
        ]
        .into();
        let pot = PotentialSeq::locally_constant(2, table).unwrap();
        assert_eq!(pot.eval_fn(&[0]).unwrap(), 0.5);
        assert_eq!(pot.eval_inf(&[0]).unwrap(), -1.0);
        assert_eq!(pot.eval_fn(&[0, 1]).unwrap(), 0.75);
        assert_eq!(pot.eval_fn(&[1, 0]).unwrap(), 0.75);
        assert!(pot.eval_fn(&[1, 1]).is_err());
        assert_eq!(pot.eval_periodic(&[0, 1]).unwrap(), 0.75);
        assert_eq!(pot.representative(&[1]).unwrap(), vec![1, 0]);
        assert_eq!(pot.c_bv(), 1.5);
    }

    #[test]
    fn constants_examples() {
        let shift = ShiftModel::full(2);
        let r = constants_report(&bernoulli(), &shift, 6).unwrap();
        assert_eq!(r.c_aa_emp, 0.0);
        assert_eq!(r.c_bv_emp, 0.0);
        assert_eq!(r.sup_f1, 0.0);
        let r = constants_report(&cocycle(), &shift, 12).unwrap();
        assert!(r.c_aa_emp > 0.0);
        assert!(r.c_aa_emp <= r.declared.almost_additivity);
        assert!(r.within_declared);
    }

    #[test]
    fn normalize_and_scale() {
        let c = PotentialSeq::constant(&[0, 1], 0.7).unwrap().normalize().unwrap();
        assert_eq!(c.eval_fn(&[0, 1, 0]).unwrap(), 0.0);
        let b = bernoulli().normalize().unwrap();
        assert_eq!(b.eval_fn(&[1, 1]).unwrap(), -2.0);
        let n = cocycle().normalize().unwrap();
        assert!((n.c_aa() - cocycle().c_aa()).abs() < 1e-15);
        ShiftModel::full(2)
            .for_each_word(8, |w| assert!(n.eval_fn(w).unwrap() <= 0.0))
            .unwrap();
        let s = bernoulli().scale(2.0);
        assert_eq!(s.eval_fn(&[1]).unwrap(), -2.0);
        assert_eq!(bernoulli().scale(0.0).eval_fn(&[1, 1]).unwrap(), 0.0);
        assert_eq!(bernoulli().scale(1.0), bernoulli());
        let unbounded = PotentialSeq::decay(DecayLaw::NegLog { beta: -1.0 });
        assert!(unbounded.normalize().is_err());
    }

    #[test]
    fn summability_examples() {
        let law = PotentialSeq::decay(DecayLaw::NegLog { beta: 2.0 });
        let r = summability_report(&law, 1.0, 10_000).unwrap();
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!(r.partial_sum < zeta2 && zeta2 - r.partial_sum <= r.tail_bound);
        assert!((r.tail_bound - 1e-4).abs() < 1e-16);
        assert_eq!(r.verdict, Summability::Summable);
        assert!(r.weighted_partial_sum.is_none());

        let zero = PotentialSeq::decay(DecayLaw::Constant { c: 0.0 });
        assert_eq!(
            summability_report(&zero, 1.0, 100).unwrap().verdict,
            Summability::NotSummable
        );

        let r = summability_report(&law, 2.0, 1000).unwrap();
        // terms 4 log i i^-4
        let brute: f64 = (1..=1000).map(|i| 4.0 * (i as f64).ln() * (i as f64).powi(-4)).sum();
        assert!((r.weighted_partial_sum.unwrap() - brute).abs() < 1e-12);
        assert!(r.weighted_tail_bound.unwrap() < 1e-7);
    }
}
