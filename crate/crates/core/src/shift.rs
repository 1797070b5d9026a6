//! Markov shifts over finite alphabets and finite truncations of countable
//! ones: word and periodic-point enumeration, mixing certificates, and the
//! nested compact approximations used to exhaust a countable shift.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::strongly_connected_components;

pub type Symbol = usize;

/// A finite sequence of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: impl Into<Vec<Symbol>>) -> Self {
        Word(symbols.into())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Transition rule of a countable shift over the symbols `1, 2, 3, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientRule {
    /// Every transition allowed.
    Full,
    /// `1 -> j` for every `j`, and `i -> i-1` for `i >= 2`.
    Renewal,
}

impl AmbientRule {
    pub fn allows(self, a: Symbol, b: Symbol) -> bool {
        if a == 0 || b == 0 {
            return false;
        }
        match self {
            AmbientRule::Full => true,
            AmbientRule::Renewal => a == 1 || b + 1 == a,
        }
    }

    /// Successors of `a` among `1..=limit`, ascending.
    pub fn successors(self, a: Symbol, limit: Symbol) -> Vec<Symbol> {
        (1..=limit).filter(|&b| self.allows(a, b)).collect()
    }

    /// Predecessors of `b` among `1..=limit`, ascending.
    pub fn predecessors(self, b: Symbol, limit: Symbol) -> Vec<Symbol> {
        (1..=limit).filter(|&a| self.allows(a, b)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct FiniteView {
    alphabet: Vec<Symbol>,
    index: BTreeMap<Symbol, usize>,
    adjacency: Vec<Vec<bool>>,
    successors: Vec<Vec<usize>>,
}

/// A one-sided Markov shift. Either a finite graph shift, or a countable
/// shift given by an [`AmbientRule`], optionally restricted to a finite view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftModel {
    rule: Option<AmbientRule>,
    view: Option<FiniteView>,
}

impl ShiftModel {
    /// Finite shift from an explicit edge list.
    pub fn from_edges(alphabet: &[Symbol], edges: &[(Symbol, Symbol)]) -> Result<Self> {
        let alphabet: Vec<Symbol> = alphabet.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let index: BTreeMap<Symbol, usize> =
            alphabet.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let n = alphabet.len();
        let mut adjacency = vec![vec![false; n]; n];
        for &(a, b) in edges {
            let (ia, ib) = match (index.get(&a), index.get(&b)) {
                (Some(&ia), Some(&ib)) => (ia, ib),
                _ => {
                    return Err(Error::validation(
                        "edges",
                        format!("edge ({a}, {b}) uses a symbol outside the alphabet"),
                    ))
                }
            };
            adjacency[ia][ib] = true;
        }
        Self::from_parts(None, alphabet, adjacency)
    }

    /// Finite shift over `0..n` from a 0/1 matrix.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::validation("transitions", "matrix must be square"));
        }
        let adjacency = rows
            .iter()
            .map(|r| r.iter().map(|&v| v != 0).collect())
            .collect();
        Self::from_parts(None, (0..n).collect(), adjacency)
    }

    /// Full shift on `0..k`.
    pub fn full(k: usize) -> Self {
        Self::from_matrix(&vec![vec![1; k]; k]).expect("full shift is valid")
    }

    /// Golden-mean shift on `{0, 1}` forbidding the factor `11`.
    pub fn golden_mean() -> Self {
        Self::from_matrix(&[vec![1, 1], vec![1, 0]]).expect("golden mean is valid")
    }

    /// Single fixed point `0^∞`.
    pub fn single_loop() -> Self {
        Self::full(1)
    }

    /// Countable shift with no finite view; exhaustive operations fail on it.
    pub fn countable(rule: AmbientRule) -> Self {
        ShiftModel {
            rule: Some(rule),
            view: None,
        }
    }

    /// Countable shift restricted to the view `{1, ..., n}`.
    pub fn truncation(rule: AmbientRule, n: usize) -> Result<Self> {
        Self::countable(rule).restrict(&(1..=n).collect::<Vec<_>>())
    }

    fn from_parts(
        rule: Option<AmbientRule>,
        alphabet: Vec<Symbol>,
        adjacency: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let n = alphabet.len();
        if n == 0 {
            return Err(Error::validation("alphabet", "alphabet must not be empty"));
        }
        for i in 0..n {
            if !adjacency[i].iter().any(|&x| x) {
                return Err(Error::validation(
                    "transitions",
                    format!("row of symbol {} is all zeros", alphabet[i]),
                ));
            }
            if !(0..n).any(|j| adjacency[j][i]) {
                return Err(Error::validation(
                    "transitions",
                    format!("column of symbol {} is all zeros", alphabet[i]),
                ));
            }
        }
        let index = alphabet.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let successors = adjacency
            .iter()
            .map(|row| (0..n).filter(|&j| row[j]).collect())
            .collect();
        Ok(ShiftModel {
            rule,
            view: Some(FiniteView {
                alphabet,
                index,
                adjacency,
                successors,
            }),
        })
    }

    /// Sub-shift on the given symbols: the induced sub-adjacency of this shift
    /// (or of the ambient rule when this shift is countable).
    pub fn restrict(&self, symbols: &[Symbol]) -> Result<Self> {
        let alphabet: Vec<Symbol> = symbols.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let adjacency = alphabet
            .iter()
            .map(|&a| {
                alphabet
                    .iter()
                    .map(|&b| match (&self.view, self.rule) {
                        (Some(v), _) if v.index.contains_key(&a) && v.index.contains_key(&b) => {
                            v.adjacency[v.index[&a]][v.index[&b]]
                        }
                        (_, Some(rule)) => rule.allows(a, b),
                        _ => false,
                    })
                    .collect()
            })
            .collect();
        for &s in &alphabet {
            let inside = match (&self.view, self.rule) {
                (Some(v), _) if v.index.contains_key(&s) => true,
                (_, Some(AmbientRule::Full)) | (_, Some(AmbientRule::Renewal)) => s >= 1,
                _ => false,
            };
            if !inside {
                return Err(Error::Domain(format!("symbol {s} is not in the ambient shift")));
            }
        }
        Self::from_parts(self.rule, alphabet, adjacency)
    }

    pub fn rule(&self) -> Option<AmbientRule> {
        self.rule
    }

    pub fn is_finite(&self) -> bool {
        self.view.is_some()
    }

    fn view(&self) -> Result<&FiniteView> {
        self.view.as_ref().ok_or_else(|| {
            Error::UnsupportedEnumeration(
                "countable shift has no finite truncation view".into(),
            )
        })
    }

    /// Symbols of the finite view (empty for a bare countable shift).
    pub fn alphabet(&self) -> &[Symbol] {
        self.view.as_ref().map(|v| v.alphabet.as_slice()).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.alphabet().len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet().is_empty()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.view.as_ref().is_some_and(|v| v.index.contains_key(&s))
    }

    pub fn index_of(&self, s: Symbol) -> Result<usize> {
        self.view()?
            .index
            .get(&s)
            .copied()
            .ok_or_else(|| Error::Domain(format!("symbol {s} is not in the alphabet")))
    }

    /// `M_ab` for symbols of the finite view, or of the ambient rule.
    pub fn allows(&self, a: Symbol, b: Symbol) -> bool {
        match (&self.view, self.rule) {
            (Some(v), _) => match (v.index.get(&a), v.index.get(&b)) {
                (Some(&i), Some(&j)) => v.adjacency[i][j],
                _ => false,
            },
            (None, Some(rule)) => rule.allows(a, b),
            (None, None) => false,
        }
    }

    pub fn is_admissible(&self, w: &[Symbol]) -> bool {
        if w.is_empty() {
            return false;
        }
        if let Some(v) = &self.view {
            if !v.index.contains_key(&w[0]) {
                return false;
            }
        }
        w.windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// Adjacency by alphabet index.
    pub fn successor_indices(&self) -> Result<&[Vec<usize>]> {
        Ok(&self.view()?.successors)
    }

    pub fn successors_of(&self, s: Symbol) -> Result<Vec<Symbol>> {
        let v = self.view()?;
        let i = self.index_of(s)?;
        Ok(v.successors[i].iter().map(|&j| v.alphabet[j]).collect())
    }

    pub fn adjacency(&self) -> Result<&[Vec<bool>]> {
        Ok(&self.view()?.adjacency)
    }

    /// Visits every admissible word of length `n` in lexicographic order.
    pub fn for_each_word(&self, n: usize, mut visit: impl FnMut(&[Symbol])) -> Result<()> {
        let v = self.view()?;
        if n == 0 {
            return Err(Error::validation("n", "word length must be at least 1"));
        }
        let mut idx: Vec<usize> = Vec::with_capacity(n);
        let mut word: Vec<Symbol> = Vec::with_capacity(n);
        // iterative DFS; `cursor[d]` is the next candidate position at depth d
        let mut cursor = vec![0usize; n];
        let mut depth = 0usize;
        loop {
            let candidates: &[usize] = if depth == 0 {
                &[]
            } else {
                &v.successors[idx[depth - 1]]
            };
            let limit = if depth == 0 { v.alphabet.len() } else { candidates.len() };
            if cursor[depth] < limit {
                let next = if depth == 0 { cursor[0] } else { candidates[cursor[depth]] };
                cursor[depth] += 1;
                idx.push(next);
                word.push(v.alphabet[next]);
                if depth + 1 == n {
                    visit(&word);
                    idx.pop();
                    word.pop();
                } else {
                    depth += 1;
                    cursor[depth] = 0;
                }
            } else {
                if depth == 0 {
                    return Ok(());
                }
                depth -= 1;
                idx.pop();
                word.pop();
            }
        }
    }

    /// All admissible words of length `n`, lexicographically ordered.
    pub fn admissible_words(&self, n: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        self.for_each_word(n, |w| out.push(Word::from(w)))?;
        Ok(out)
    }

    /// Cyclic words `w` of length `n` with `w_1 = a` and `M_{w_n a} = 1`; each
    /// encodes the fixed point `w^∞` of `σ^n` in the cylinder `[a]`.
    pub fn periodic_points(&self, n: usize, a: Symbol) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        self.for_each_periodic_point(n, a, |w| out.push(Word::from(w)))?;
        Ok(out)
    }

    pub fn for_each_periodic_point(
        &self,
        n: usize,
        a: Symbol,
        mut visit: impl FnMut(&[Symbol]),
    ) -> Result<()> {
        let v = self.view()?;
        let start = self.index_of(a)?;
        if n == 0 {
            return Err(Error::validation("n", "period must be at least 1"));
        }
        let mut word = vec![a];
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if word.len() == n {
                if v.adjacency[node][start] {
                    visit(&word);
                }
                stack.pop();
                word.pop();
                continue;
            }
            if *next < v.successors[node].len() {
                let succ = v.successors[node][*next];
                *next += 1;
                stack.push((succ, 0));
                word.push(v.alphabet[succ]);
            } else {
                stack.pop();
                word.pop();
            }
        }
        Ok(())
    }

    /// Primitivity check by period computation (cheaper than a full certificate).
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(period(self.successor_indices()?) == Some(1))
    }

    pub fn mixing_certificate(&self) -> Result<MixingCertificate> {
        mixing_certificate(self)
    }
}

/// Gcd of cycle lengths of an irreducible graph, `None` when reducible.
fn period(succ: &[Vec<usize>]) -> Option<usize> {
    let n = succ.len();
    let comps = strongly_connected_components(succ);
    if comps.len() != 1 || succ.iter().all(|s| s.is_empty()) {
        return None;
    }
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut g = 0usize;
    while let Some(u) = queue.pop_front() {
        for &v in &succ[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                let diff = (level[u] + 1).abs_diff(level[v]);
                g = gcd(g, diff);
            }
        }
    }
    Some(g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixingStatus {
    Mixing,
    Periodic,
    Reducible,
}

/// Evidence of topological mixing.
///
/// `pair_bounds[i][j]` is `N_ab` for `a = alphabet[i]`, `b = alphabet[j]`: the
/// least `N` such that `a` reaches `b` in exactly `n` steps for every `n >= N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixingCertificate {
    pub status: MixingStatus,
    pub primitive_exponent: Option<usize>,
    pub pair_bounds: Option<Vec<Vec<usize>>>,
    pub wielandt_bound: usize,
}

impl MixingCertificate {
    pub fn is_mixing(&self) -> bool {
        self.status == MixingStatus::Mixing
    }
}

type BitRow = Vec<u64>;

fn bit_get(row: &BitRow, j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

fn bit_set(row: &mut BitRow, j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

pub fn mixing_certificate(shift: &ShiftModel) -> Result<MixingCertificate> {
    let succ = shift.successor_indices()?;
    let n = succ.len();
    let wielandt_bound = (n - 1) * (n - 1) + 1;
    let status = match period(succ) {
        None => MixingStatus::Reducible,
        Some(1) => MixingStatus::Mixing,
        Some(_) => MixingStatus::Periodic,
    };
    if status != MixingStatus::Mixing {
        return Ok(MixingCertificate {
            status,
            primitive_exponent: None,
            pair_bounds: None,
            wielandt_bound,
        });
    }
    let words = n.div_ceil(64);
    let base: Vec<BitRow> = succ
        .iter()
        .map(|s| {
            let mut row = vec![0u64; words];
            for &j in s {
                bit_set(&mut row, j);
            }
            row
        })
        .collect();
    // last power at which (a, b) had no path
    let mut last_zero = vec![vec![0usize; n]; n];
    let mut power = base.clone();
    let full = |row: &BitRow| (0..n).all(|j| bit_get(row, j));
    let mut exponent = None;
    for k in 1..=wielandt_bound {
        for (a, row) in power.iter().enumerate() {
            for b in 0..n {
                if !bit_get(row, b) {
                    last_zero[a][b] = k;
                }
            }
        }
        if power.iter().all(full) {
            exponent = Some(k);
            break;
        }
        power = power
            .iter()
            .map(|row| {
                let mut next = vec![0u64; words];
                for v in 0..n {
                    if bit_get(row, v) {
                        for (x, y) in next.iter_mut().zip(&base[v]) {
                            *x |= *y;
                        }
                    }
                }
                next
            })
            .collect();
    }
    match exponent {
        Some(k) => Ok(MixingCertificate {
            status,
            primitive_exponent: Some(k),
            pair_bounds: Some(
                last_zero
                    .iter()
                    .map(|r| r.iter().map(|&z| z + 1).collect())
                    .collect(),
            ),
            wielandt_bound,
        }),
        None => Err(Error::NonConvergence {
            operation: "mixing certificate".into(),
            message: format!("no positive power up to the Wielandt bound {wielandt_bound}"),
        }),
    }
}

/// Word lengths joining the retained states of one approximation level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub from: Symbol,
    pub to: Symbol,
    /// `N_k - 1` intermediate symbols: `from e to` takes `N_k` steps.
    pub e_word: Word,
    /// `N_k` intermediate symbols: `from c to` takes `N_k + 1` steps.
    pub c_word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationLevel {
    pub retained: Vec<Symbol>,
    pub connection_length: usize,
    pub connectors: Vec<Connector>,
    pub shift: ShiftModel,
    pub certificate: MixingCertificate,
}

impl ApproximationLevel {
    pub fn alphabet(&self) -> &[Symbol] {
        self.shift.alphabet()
    }
}

/// Nested compact mixing subshifts `Σ_1 ⊂ Σ_2 ⊂ ...` of an ambient shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactApproximation {
    pub levels: Vec<ApproximationLevel>,
    /// False when the ambient shift is rule-based, whose mixing is assumed.
    pub ambient_mixing_verified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproximationOptions {
    /// Seed of `S_1`; defaults to symbol 1, or the smallest symbol when 1 is absent.
    pub seed: Option<Symbol>,
    /// Maximal connection length as `factor * |S_k| + offset`.
    pub depth_factor: usize,
    pub depth_offset: usize,
}

impl Default for ApproximationOptions {
    fn default() -> Self {
        ApproximationOptions {
            seed: None,
            depth_factor: 4,
            depth_offset: 16,
        }
    }
}

/// Builds `levels` nested compact approximations inside the finite view of
/// `ambient`. Connectors are chosen greedily, always stepping to the largest
/// symbol from which the target stays reachable in the remaining steps, so that
/// successive levels sweep out new symbols.
pub fn compact_approximation(
    ambient: &ShiftModel,
    levels: usize,
    options: ApproximationOptions,
) -> Result<CompactApproximation> {
    let view = ambient.view()?;
    let ambient_mixing_verified = if ambient.rule().is_some() {
        false
    } else {
        if !ambient.mixing_certificate()?.is_mixing() {
            return Err(Error::validation("ambient", "ambient shift is not topologically mixing"));
        }
        true
    };
    let n = view.alphabet.len();
    let mut pred = vec![Vec::new(); n];
    for (a, s) in view.successors.iter().enumerate() {
        for &b in s {
            pred[b].push(a);
        }
    }
    let seed = match options.seed {
        Some(s) => s,
        None if ambient.contains(1) => 1,
        None => view.alphabet[0],
    };
    let mut retained = vec![ambient.index_of(seed)?];
    let mut out = Vec::with_capacity(levels);
    for level in 1..=levels {
        let cap = options.depth_factor * retained.len() + options.depth_offset;
        // backward[b][r] = vertices reaching b in exactly r steps
        let backward: BTreeMap<usize, Vec<Vec<bool>>> = retained
            .iter()
            .map(|&b| {
                let mut layers = vec![vec![false; n]];
                layers[0][b] = true;
                for r in 1..=cap + 1 {
                    let prev = &layers[r - 1];
                    let mut next = vec![false; n];
                    for v in 0..n {
                        if prev[v] {
                            for &u in &pred[v] {
                                next[u] = true;
                            }
                        }
                    }
                    layers.push(next);
                }
                (b, layers)
            })
            .collect();
        let reach = |a: usize, b: usize, steps: usize| backward[&b][steps][a];
        let mut connection_length = None;
        let mut failing = (retained[0], retained[0]);
        for len in 2..=cap {
            let bad = retained.iter().flat_map(|&a| retained.iter().map(move |&b| (a, b))).find(
                |&(a, b)| !(reach(a, b, len) && reach(a, b, len + 1)),
            );
            match bad {
                None => {
                    connection_length = Some(len);
                    break;
                }
                Some(pair) => failing = pair,
            }
        }
        let len = connection_length.ok_or(Error::ConstructionFailure {
            level,
            from: view.alphabet[failing.0],
            to: view.alphabet[failing.1],
            length: cap,
        })?;
        let walk = |a: usize, b: usize, steps: usize| -> Word {
            let mut cur = a;
            let mut inner = Vec::with_capacity(steps - 1);
            for s in 1..steps {
                let next = view.successors[cur]
                    .iter()
                    .rev()
                    .copied()
                    .find(|&v| backward[&b][steps - s][v])
                    .expect("reachability layers guarantee a continuation");
                inner.push(view.alphabet[next]);
                cur = next;
            }
            Word(inner)
        };
        let mut members: BTreeSet<usize> = retained.iter().copied().collect();
        let mut connectors = Vec::new();
        for &a in &retained {
            for &b in &retained {
                let e_word = walk(a, b, len);
                let c_word = walk(a, b, len + 1);
                for s in e_word.iter().chain(c_word.iter()) {
                    members.insert(view.index[s]);
                }
                connectors.push(Connector {
                    from: view.alphabet[a],
                    to: view.alphabet[b],
                    e_word,
                    c_word,
                });
            }
        }
        let symbols: Vec<Symbol> = members.iter().map(|&i| view.alphabet[i]).collect();
        let shift = ambient.restrict(&symbols)?;
        let certificate = shift.mixing_certificate()?;
        if !certificate.is_mixing() {
            return Err(Error::InternalConsistency(format!(
                "approximation level {level} is not mixing"
            )));
        }
        out.push(ApproximationLevel {
            retained: retained.iter().map(|&i| view.alphabet[i]).collect(),
            connection_length: len,
            connectors,
            shift,
            certificate,
        });
        retained = members.into_iter().collect();
    }
    Ok(CompactApproximation {
        levels: out,
        ambient_mixing_verified,
    })
}

/// `exp(-i)` where `i` is the first (1-based) disagreement; 0 when the words
/// agree on their common length.
pub fn cylinder_distance(x: &[Symbol], y: &[Symbol]) -> f64 {
    x.iter()
        .zip(y)
        .position(|(a, b)| a != b)
        .map_or(0.0, |i| (-((i + 1) as f64)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(shift: &ShiftModel, n: usize) -> Vec<Vec<Symbol>> {
        shift
            .admissible_words(n)
            .unwrap()
            .into_iter()
            .map(|w| w.0)
            .collect()
    }

    #[test]
    fn full_shift_words() {
        assert_eq!(
            words(&ShiftModel::full(2), 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn golden_mean_words_avoid_11() {
        let w = words(&ShiftModel::golden_mean(), 3);
        assert_eq!(w.len(), 5);
        assert!(w.iter().all(|w| !w.windows(2).any(|p| p == [1, 1])));
    }

    #[test]
    fn renewal_truncation_words() {
        let s = ShiftModel::truncation(AmbientRule::Renewal, 3).unwrap();
        assert_eq!(
            words(&s, 2),
            vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![3, 2]]
        );
    }

    #[test]
    fn countable_enumeration_is_unsupported() {
        let s = ShiftModel::countable(AmbientRule::Renewal);
        assert!(matches!(s.admissible_words(2), Err(Error::UnsupportedEnumeration(_))));
        assert!(s.allows(5, 4) && !s.allows(5, 3));
    }

    #[test]
    fn zero_rows_rejected() {
        let err = ShiftModel::from_matrix(&[vec![1, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
        let err = ShiftModel::from_matrix(&[vec![1, 0], vec![1, 0]]).unwrap_err();
        assert!(err.to_string().contains("column"));
    }

    #[test]
    fn periodic_point_examples() {
        assert_eq!(ShiftModel::full(2).periodic_points(10, 0).unwrap().len(), 512);
        let g = ShiftModel::golden_mean().periodic_points(2, 0).unwrap();
        assert_eq!(g, vec![Word::new([0, 0]), Word::new([0, 1])]);
        assert_eq!(ShiftModel::single_loop().periodic_points(7, 0).unwrap().len(), 1);
        assert!(matches!(
            ShiftModel::full(2).periodic_points(3, 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn certificates() {
        let g = ShiftModel::golden_mean().mixing_certificate().unwrap();
        assert_eq!(g.status, MixingStatus::Mixing);
        assert_eq!(g.primitive_exponent, Some(2));
        // 1 -> 1 needs at least two steps
        assert_eq!(g.pair_bounds.unwrap()[1][1], 2);
        let p = ShiftModel::from_matrix(&[vec![0, 1], vec![1, 0]])
            .unwrap()
            .mixing_certificate()
            .unwrap();
        assert_eq!(p.status, MixingStatus::Periodic);
        let f = ShiftModel::full(2).mixing_certificate().unwrap();
        assert_eq!(f.primitive_exponent, Some(1));
        let r = ShiftModel::from_matrix(&[vec![1, 1], vec![0, 1]])
            .unwrap()
            .mixing_certificate()
            .unwrap();
        assert_eq!(r.status, MixingStatus::Reducible);
    }

    #[test]
    fn renewal_first_level() {
        let ambient = ShiftModel::truncation(AmbientRule::Renewal, 50).unwrap();
        let approx = compact_approximation(&ambient, 1, Default::default()).unwrap();
        let level = &approx.levels[0];
        assert_eq!(level.alphabet(), &[1, 2, 3]);
        assert_eq!(level.connection_length, 2);
        assert_eq!(level.connectors[0].e_word, Word::new([2]));
        assert_eq!(level.connectors[0].c_word, Word::new([3, 2]));
        assert!(!approx.ambient_mixing_verified);
    }

    #[test]
    fn finite_ambient_closes() {
        let ambient = ShiftModel::golden_mean();
        let approx = compact_approximation(&ambient, 2, Default::default()).unwrap();
        assert!(approx.ambient_mixing_verified);
        for level in &approx.levels {
            assert!(level.certificate.is_mixing());
            assert!(level.alphabet().iter().all(|s| ambient.contains(*s)));
        }
    }

    #[test]
    fn approximation_failure_names_pair() {
        // only a long detour returns to 1
        let ambient = ShiftModel::truncation(AmbientRule::Renewal, 50).unwrap();
        let err = compact_approximation(
            &ambient,
            1,
            ApproximationOptions {
                seed: Some(1),
                depth_factor: 0,
                depth_offset: 1,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConstructionFailure { from: 1, to: 1, .. }));
    }

    #[test]
    fn distances() {
        assert_eq!(cylinder_distance(&[0, 1, 1], &[0, 1, 1]), 0.0);
        assert_eq!(cylinder_distance(&[0, 1], &[1, 1]), (-1f64).exp());
        assert_eq!(cylinder_distance(&[0, 1, 0, 1], &[0, 1, 1, 1]), (-3f64).exp());
    }
}
