//! Small dense/sparse helpers for nonnegative matrices: Perron roots by power
//! iteration, strongly connected components, square matrix products.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major sparse nonnegative matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T> {
    dim: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn new(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<(usize, T)>>) -> Self {
        SparseMatrix {
            dim: rows.len(),
            rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push(&mut self, row: usize, col: usize, value: T) {
        self.rows[row].push((col, value));
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn transpose(&self) -> Self {
        let mut t = SparseMatrix::new(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                t.rows[j].push((i, v));
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(j, v)| v * x[j]).sum())
            .collect()
    }

    /// Adjacency lists of the positive pattern.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(_, v)| *v > T::zero())
                    .map(|&(j, _)| j)
                    .collect()
            })
            .collect()
    }
}

/// Dominant eigenvalue and positive eigenvector of a primitive matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronPair<T> {
    pub eigenvalue: T,
    /// Normalised to unit l1 norm.
    pub vector: Vec<T>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration<T> {
    pub tolerance: T,
    pub max_iterations: usize,
}

impl<T: Scalar> Default for PowerIteration<T> {
    fn default() -> Self {
        PowerIteration {
            tolerance: T::solver_tolerance(),
            max_iterations: 100_000,
        }
    }
}

impl<T: Scalar> PowerIteration<T> {
    /// Iterates `x <- A x / |A x|_1` from the uniform vector until the
    /// Collatz-Wielandt ratios `(A x)_i / x_i` agree to the relative
    /// tolerance, which brackets the Perron root. When the spectral gap is too
    /// small for that (nearly reducible or nearly periodic weights), matrices
    /// up to [`DENSE_LIMIT`] switch to shifted inverse iteration.
    pub fn run(&self, a: &SparseMatrix<T>) -> Result<PerronPair<T>> {
        let n = a.dim();
        if n == 0 {
            return Err(Error::Domain("power iteration on an empty matrix".into()));
        }
        let budget = if n <= DENSE_LIMIT {
            self.max_iterations.min(POWER_PHASE)
        } else {
            self.max_iterations
        };
        let mut x = vec![T::one() / T::of_usize(n); n];
        for it in 1..=budget {
            let y = a.mul_vec(&x);
            let norm: T = y.iter().copied().sum();
            if !(norm > T::zero()) || !norm.is_finite() {
                return Err(Error::NonConvergence {
                    operation: "power iteration".into(),
                    message: format!("iterate collapsed (norm {norm}) at step {it}"),
                });
            }
            let (mut lo, mut hi) = (T::infinity(), T::zero());
            for (&yi, &xi) in y.iter().zip(&x) {
                let r = if xi > T::zero() { yi / xi } else { T::infinity() };
                lo = lo.min(r);
                hi = hi.max(r);
            }
            if hi.is_finite() && hi - lo <= self.tolerance * hi {
                return Ok(PerronPair {
                    eigenvalue: norm,
                    vector: x,
                    iterations: it,
                });
            }
            x = y.iter().map(|&v| v / norm).collect();
        }
        if n <= DENSE_LIMIT {
            return self.inverse_iteration(a, &x, budget);
        }
        Err(Error::NonConvergence {
            operation: "power iteration".into(),
            message: format!(
                "no convergence within {} iterations (matrix not primitive?)",
                self.max_iterations
            ),
        })
    }

    /// Inverse iteration on the balanced matrix `B = D^-1 A D`, `D = diag(x)`,
    /// whose row sums are the Collatz-Wielandt ratios of `x`. The Perron root
    /// is bracketed by those ratios and by M-matrix probes of `σ I - B`.
    fn inverse_iteration(&self, a: &SparseMatrix<T>, start: &[T], done: usize) -> Result<PerronPair<T>> {
        let n = a.dim();
        let tol = self.tolerance.as_f64();
        let top = start.iter().map(|v| v.as_f64()).fold(0.0, f64::max);
        let mut x: Vec<f64> = start.iter().map(|v| v.as_f64().max(top * 1e-300)).collect();
        let (mut lower, mut upper) = (0.0f64, f64::INFINITY);
        for it in 1..=INVERSE_STEPS {
            let mut b = vec![vec![0.0f64; n]; n];
            for (i, row) in b.iter_mut().enumerate() {
                for &(j, v) in a.row(i) {
                    row[j] += v.as_f64() * x[j] / x[i];
                }
            }
            let sums: Vec<f64> = b.iter().map(|r| r.iter().sum()).collect();
            let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = sums.iter().copied().fold(0.0, f64::max);
            if !(hi > 0.0) || !hi.is_finite() {
                break;
            }
            lower = lower.max(lo);
            upper = upper.min(hi);
            let settled = if hi - lo <= tol * hi {
                Some(0.5 * (hi + lo))
            } else if upper - lower <= tol * upper {
                Some(0.5 * (upper + lower))
            } else {
                None
            };
            if let Some(lambda) = settled {
                let total: f64 = x.iter().sum();
                return Ok(PerronPair {
                    eigenvalue: T::of(lambda),
                    vector: x.iter().map(|&v| T::of(v / total)).collect(),
                    iterations: done + it,
                });
            }
            let probe = if lower > 0.0 && upper > 2.0 * lower {
                (lower * upper).sqrt()
            } else {
                0.5 * (lower + upper)
            };
            let z = match m_matrix_solve(&b, probe) {
                Some(z) => {
                    upper = probe;
                    z
                }
                None => {
                    lower = probe;
                    match m_matrix_solve(&b, upper) {
                        Some(z) => z,
                        None => continue,
                    }
                }
            };
            let zmax = z.iter().copied().fold(0.0, f64::max);
            for (xi, zi) in x.iter_mut().zip(&z) {
                *xi *= zi / zmax;
            }
            let total: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= total);
        }
        Err(Error::NonConvergence {
            operation: "power iteration".into(),
            message: format!(
                "no convergence within {} power and {INVERSE_STEPS} inverse steps (matrix not primitive?)",
                done
            ),
        })
    }
}

/// Solves `(σ I - B) z = 1` by elimination without pivoting. Returns `None`
/// unless every pivot and every component of `z` is positive, which for an
/// irreducible nonnegative `B` happens exactly when `σ > ρ(B)`.
fn m_matrix_solve(b: &[Vec<f64>], sigma: f64) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = b
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, &v)| if i == j { sigma - v } else { -v }).collect())
        .collect();
    let mut rhs = vec![1.0f64; n];
    for k in 0..n {
        let pivot = m[k][k];
        if !(pivot > 0.0) || !pivot.is_finite() {
            return None;
        }
        for i in k + 1..n {
            let factor = m[i][k] / pivot;
            if factor != 0.0 {
                for j in k..n {
                    m[i][j] -= factor * m[k][j];
                }
                rhs[i] -= factor * rhs[k];
            }
        }
    }
    let mut z = vec![0.0f64; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * z[j]).sum();
        z[i] = (rhs[i] - s) / m[i][i];
        if !(z[i] > 0.0) || !z[i].is_finite() {
            return None;
        }
    }
    Some(z)
}

/// Largest dimension for the dense inverse-iteration fallback.
pub const DENSE_LIMIT: usize = 512;
const POWER_PHASE: usize = 20_000;
const INVERSE_STEPS: usize = 200;

/// Strongly connected components, each sorted, listed by smallest member.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    // Kosaraju with explicit stacks.
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if i < adj[v].len() {
                stack.push((v, i + 1));
                let w = adj[v][i];
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut radj = vec![Vec::new(); n];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            radj[w].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &radj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps.sort();
    comps
}

/// Spectral radius of an arbitrary nonnegative matrix. Each irreducible block
/// is handled through `I + A`, which is primitive whenever `A` is irreducible.
pub fn spectral_radius<T: Scalar>(a: &SparseMatrix<T>) -> Result<T> {
    let support = a.support();
    let mut best = T::zero();
    for comp in strongly_connected_components(&support) {
        let mut index = vec![usize::MAX; a.dim()];
        for (k, &v) in comp.iter().enumerate() {
            index[v] = k;
        }
        let mut block = SparseMatrix::new(comp.len());
        let mut has_edge = false;
        for (k, &v) in comp.iter().enumerate() {
            block.push(k, k, T::one());
            for &(w, val) in a.row(v) {
                if index[w] != usize::MAX && val > T::zero() {
                    block.push(k, index[w], val);
                    has_edge = true;
                }
            }
        }
        if !has_edge {
            continue;
        }
        let pair = PowerIteration::default().run(&block)?;
        best = best.max(pair.eigenvalue - T::one());
    }
    Ok(best)
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Square<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Square<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::validation("matrix", "matrix must be square and non-empty"));
        }
        Ok(Square {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![T::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = T::one();
        }
        Square { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    pub fn mul(&self, other: &Square<T>) -> Square<T> {
        let n = self.dim;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    data[i * n + j] = data[i * n + j] + a * other.get(k, j);
                }
            }
        }
        Square { dim: n, data }
    }

    /// Max absolute row sum.
    pub fn row_sum_norm(&self) -> T {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn min_entry(&self) -> T {
        self.data.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn to_sparse(&self) -> SparseMatrix<T> {
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .filter(|&j| self.get(i, j) != T::zero())
                    .map(|j| (j, self.get(i, j)))
                    .collect()
            })
            .collect();
        SparseMatrix::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[f64]]) -> SparseMatrix<f64> {
        Square::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
            .to_sparse()
    }

    #[test]
    fn golden_mean_perron_root() {
        let pair = PowerIteration::default()
            .run(&dense(&[&[1.0, 1.0], &[1.0, 0.0]]))
            .unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((pair.eigenvalue - phi).abs() < 1e-12);
        assert!((pair.vector[0] / pair.vector[1] - phi).abs() < 1e-10);
    }

    #[test]
    fn periodic_matrix_settles_through_the_fallback() {
        let pair = PowerIteration {
            tolerance: 1e-12,
            max_iterations: 1000,
        }
        .run(&dense(&[&[0.0, 1.0], &[2.0, 0.0]]))
        .unwrap();
        assert!((pair.eigenvalue - 2f64.sqrt()).abs() < 1e-11);
        assert!((pair.vector[0] / pair.vector[1] - 1.0 / 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn huge_dynamic_range() {
        // [[0, e^109], [e^-100, e^-100]]: ρ is within e^-200 of e^4.5
        let a = dense(&[&[0.0, 109f64.exp()], &[(-100f64).exp(), (-100f64).exp()]]);
        let pair = PowerIteration::default().run(&a).unwrap();
        assert!((pair.eigenvalue.ln() - 4.5).abs() < 1e-11);
    }

    #[test]
    fn tiny_perron_components_are_not_taken_as_converged() {
        // 3-cycle 0->2->1->0 plus a loop at 2 that is ten times lighter
        let t = 33.264212200133514f64;
        let f: [f64; 3] = [-2.640225871131809, 0.4005191263951171, -1.228010692479253];
        let w = |u: usize| (t * f[u]).exp();
        let a = dense(&[&[0.0, 0.0, w(0)], &[w(1), 0.0, 0.0], &[0.0, w(2), w(2)]]);
        let pair = PowerIteration::default().run(&a).unwrap();
        assert!((pair.eigenvalue.ln() + 38.419553672339404).abs() < 1e-9);
    }

    #[test]
    fn spectral_radius_of_reducible_and_periodic() {
        // permutation block: radius 1
        let r = spectral_radius(&dense(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        // two disjoint blocks, radii 1 and 3
        let r = spectral_radius(&dense(&[
            &[1.0, 1.0, 0.0],
            &[0.0, 3.0, 0.0],
            &[0.0, 0.0, 0.0],
        ]))
        .unwrap();
        assert!((r - 3.0).abs() < 1e-10);
        // nilpotent
        assert_eq!(spectral_radius(&dense(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap(), 0.0);
    }

    #[test]
    fn scc_ordering() {
        let adj = vec![vec![1], vec![0], vec![2, 0], vec![]];
        assert_eq!(
            strongly_connected_components(&adj),
            vec![vec![0, 1], vec![2], vec![3]]
        );
    }

    #[test]
    fn square_products_and_norm() {
        let a = Square::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let b = Square::from_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let p = a.mul(&b);
        assert_eq!(p.get(0, 0), 3.0);
        assert_eq!(p.get(1, 1), 2.0);
        assert_eq!(p.row_sum_norm(), 5.0);
        assert_eq!(Square::<f64>::identity(3).row_sum_norm(), 1.0);
    }

    #[test]
    fn nearly_periodic_weights_fall_back_to_inverse_iteration() {
        // eigenvalues about ±4.1495e-7 and 0; entries span 14 orders of magnitude
        let (t, f) = (12.368824158452142f64, [-2.522554909658163f64, -2.4790924523187154, 0.10293971449328879]);
        let mut a = SparseMatrix::new(3);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (2, 1)] {
            a.push(u, v, (t * f[u]).exp());
        }
        let pair = PowerIteration::default().run(&a).unwrap();
        assert!(pair.iterations > POWER_PHASE);
        assert!((pair.eigenvalue.ln() + 14.695107659967448).abs() < 1e-9);
        let ax = a.mul_vec(&pair.vector);
        for (y, x) in ax.iter().zip(&pair.vector) {
            assert!((y / x / pair.eigenvalue - 1.0).abs() < 1e-11);
        }
    }
}
