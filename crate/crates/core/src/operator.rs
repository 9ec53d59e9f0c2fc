//! Sparse operators on the dart set and their Perron values.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{require_irreducible, Error, Result};
use crate::graph::{DartId, Graph};

/// Default relative tolerance for Perron values.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Row-compressed nonnegative square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct NbOperator {
    dimension: usize,
    offsets: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl NbOperator {
    /// Assembles an operator over `g`'s transition relation, with entry
    /// `(e, f)` equal to `weight(e)` for every `e -> f`.
    fn from_transitions(g: &Graph, weight: impl Fn(DartId) -> f64) -> Self {
        let n = g.dart_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut values = Vec::new();
        offsets.push(0);
        for e in 0..n {
            let w = weight(e);
            for &f in g.dart_transitions(e) {
                cols.push(f);
                values.push(w);
            }
            offsets.push(cols.len());
        }
        NbOperator {
            dimension: n,
            offsets,
            cols,
            values,
        }
    }

    /// Non-backtracking adjacency matrix `B`.
    pub fn nb_matrix(g: &Graph) -> Self {
        Self::from_transitions(g, |_| 1.0)
    }

    /// Transition matrix `Pi` of the non-backtracking random walk.
    pub fn transition_matrix(g: &Graph) -> Result<Self> {
        Self::weighted(g, &vec![1.0; g.dart_count()])
    }

    /// `Pi_beta`, with entry `(e, f) = Pi(e, f) * beta(e)`.
    pub fn weighted(g: &Graph, beta: &[f64]) -> Result<Self> {
        if beta.len() != g.dart_count() {
            return Err(Error::InvalidParameter(format!(
                "weight vector has length {}, graph has {} darts",
                beta.len(),
                g.dart_count()
            )));
        }
        for (dart, &weight) in beta.iter().enumerate() {
            if weight.is_nan() || weight <= 0.0 {
                return Err(Error::NonPositiveWeight { dart, weight });
            }
        }
        if let Some(dart) = (0..g.dart_count()).find(|&e| g.outdeg(e) == 0) {
            return Err(Error::ZeroOutdegree { dart });
        }
        Ok(Self::from_transitions(g, |e| beta[e] / g.outdeg(e) as f64))
    }

    /// `M_t`, the entry-wise interpolation `Pi^(1-t) B^t`, built as
    /// `Pi_beta` with `beta(e) = outdeg(e)^t`.
    pub fn interpolated(g: &Graph, t: f64) -> Result<Self> {
        let beta: Vec<f64> = (0..g.dart_count()).map(|e| (g.outdeg(e) as f64).powf(t)).collect();
        Self::weighted(g, &beta)
    }

    /// Dense row-major input; zeros are dropped.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut offsets = vec![0];
        let mut cols = Vec::new();
        let mut values = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 0.0 || !v.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i}, {j}) = {v} is not a finite nonnegative value"
                    )));
                }
                if v != 0.0 {
                    cols.push(j);
                    values.push(v);
                }
            }
            offsets.push(cols.len());
        }
        Ok(NbOperator {
            dimension: n,
            offsets,
            cols,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        NbOperator {
            dimension: n,
            offsets: (0..=n).collect(),
            cols: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// Nonzero `(column, value)` pairs of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[i]..self.offsets[i + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).filter(|&(c, _)| c == j).map(|(_, v)| v).sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.dimension).map(|i| self.row(i).map(|(_, v)| v).sum()).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.dimension]; self.dimension];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] += v;
            }
        }
        out
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).map(|(j, v)| v * x[j]).sum();
        }
    }

    /// `y = x^T A`.
    pub fn apply_left(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (i, &xi) in x.iter().enumerate() {
            for (j, v) in self.row(i) {
                y[j] += xi * v;
            }
        }
    }
}

/// Result of a Perron value computation.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronEstimate {
    pub value: f64,
    /// Collatz–Wielandt bracket of the Perron value.
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    /// Positive Perron vector, normalized to unit sum.
    pub vector: Vec<f64>,
}

pub fn default_max_iter(dimension: usize) -> usize {
    let n = dimension.max(1) as f64;
    (100.0 * n * n.ln()).ceil() as usize + 1000
}

/// Perron value of an irreducible nonnegative operator.
///
/// Power iteration runs on `A + I`, whose spectrum is `A`'s shifted by one
/// and which is primitive whenever `A` is irreducible, so periodic operators
/// (subdivided graphs) still converge. The Collatz–Wielandt ratios
/// `min (Ax)_i / x_i <= rho <= max (Ax)_i / x_i` bracket the answer; the
/// iteration stops once the half-width is at most `rel_tol * value`.
pub fn perron(op: &NbOperator, rel_tol: f64, max_iter: usize) -> Result<PerronEstimate> {
    let n = op.dimension();
    if n == 0 {
        return Err(Error::InvalidParameter("empty operator".into()));
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for iteration in 1..=max_iter {
        op.apply(&x, &mut y);
        lower = f64::INFINITY;
        upper = f64::NEG_INFINITY;
        let mut total = 0.0;
        for (yi, &xi) in y.iter_mut().zip(&x) {
            *yi += xi;
            total += *yi;
            if xi > 0.0 {
                let r = *yi / xi;
                lower = lower.min(r);
                upper = upper.max(r);
            }
        }
        // Shift back: the bracket was for A + I.
        lower -= 1.0;
        upper -= 1.0;
        y.iter_mut().for_each(|v| *v /= total);
        std::mem::swap(&mut x, &mut y);
        let value = 0.5 * (lower + upper);
        if 0.5 * (upper - lower) <= rel_tol * value.abs() {
            return Ok(PerronEstimate {
                value,
                lower,
                upper,
                iterations: iteration,
                vector: x,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        estimate: 0.5 * (lower + upper),
        lower,
        upper,
        vector: x,
    })
}

/// Perron value with the default iteration cap.
pub fn perron_value(op: &NbOperator, rel_tol: f64) -> Result<f64> {
    perron(op, rel_tol, default_max_iter(op.dimension())).map(|p| p.value)
}

/// Growth rate of the universal cover: Perron value of `B`.
pub fn rho(g: &Graph, rel_tol: f64) -> Result<PerronEstimate> {
    require_irreducible(g)?;
    let b = NbOperator::nb_matrix(g);
    perron(&b, rel_tol, default_max_iter(b.dimension()))
}

/// Uniform distribution on darts, stationary for `Pi`.
pub fn stationary_distribution(g: &Graph) -> Vec<f64> {
    let n = g.dart_count();
    vec![1.0 / n as f64; n]
}

/// `|Omega_{e,l}|`: non-backtracking walks `(e_0 = e, ..., e_l)`, counted by
/// exact vector iteration `1_e B^l 1`.
pub fn count_nb_walks(g: &Graph, e: DartId, len: usize) -> BigUint {
    let mut v = vec![BigUint::zero(); g.dart_count()];
    v[e] = BigUint::one();
    for _ in 0..len {
        let mut next = vec![BigUint::zero(); g.dart_count()];
        for (d, count) in v.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &f in g.dart_transitions(d) {
                next[f] += count;
            }
        }
        v = next;
    }
    v.into_iter().sum()
}

/// `|Omega_{e,l}|` for every starting dart at once, via `B^l 1`.
pub fn count_nb_walks_all(g: &Graph, len: usize) -> Vec<BigUint> {
    let mut w = vec![BigUint::one(); g.dart_count()];
    for _ in 0..len {
        w = (0..g.dart_count())
            .map(|e| g.dart_transitions(e).iter().map(|&f| &w[f]).sum())
            .collect();
    }
    w
}

/// `|Omega_{e,l}|` by explicit depth-first enumeration of walks.
///
/// Independent of the cached transition lists: successors are recomputed
/// from the vertex incidences. Cost is the number of walks, so this is only
/// practical for short lengths.
pub fn enumerate_nb_walks(g: &Graph, e: DartId, len: usize) -> u64 {
    fn go(g: &Graph, e: DartId, remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let here = g.dart(e);
        g.out_darts(here.head)
            .iter()
            .filter(|&&f| f != here.reverse)
            .map(|&f| go(g, f, remaining - 1))
            .sum()
    }
    go(g, e, len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn k4_minus_edge_nonzeros() {
        let g = families::k4_minus_edge();
        assert_eq!(NbOperator::nb_matrix(&g).nnz(), 16);
    }

    #[test]
    fn k4_rows_have_two_ones() {
        let b = NbOperator::nb_matrix(&families::complete(4).unwrap());
        for i in 0..b.dimension() {
            let row: Vec<_> = b.row(i).collect();
            assert_eq!(row.len(), 2);
            assert!(row.iter().all(|&(_, v)| v == 1.0));
        }
    }

    #[test]
    fn triangle_b_is_two_three_cycles() {
        let g = Graph::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = NbOperator::nb_matrix(&g);
        for start in 0..6 {
            let mut d = start;
            let mut steps = 0;
            loop {
                let next: Vec<_> = b.row(d).collect();
                assert_eq!(next.len(), 1);
                d = next[0].0;
                steps += 1;
                if d == start {
                    break;
                }
            }
            assert_eq!(steps, 3);
        }
    }

    #[test]
    fn weighted_variants() {
        let g = families::k4_minus_edge();
        let pi = NbOperator::transition_matrix(&g).unwrap();
        assert_eq!(NbOperator::weighted(&g, &[1.0; 10]).unwrap(), pi);
        let outdeg: Vec<f64> = (0..10).map(|e| g.outdeg(e) as f64).collect();
        assert_eq!(NbOperator::weighted(&g, &outdeg).unwrap(), NbOperator::nb_matrix(&g));
        assert_eq!(NbOperator::interpolated(&g, 0.0).unwrap(), pi);
        assert_eq!(NbOperator::interpolated(&g, 1.0).unwrap(), NbOperator::nb_matrix(&g));
        let mut bad = vec![1.0; 10];
        bad[3] = 0.0;
        assert!(matches!(
            NbOperator::weighted(&g, &bad),
            Err(Error::NonPositiveWeight { dart: 3, .. })
        ));
    }

    #[test]
    fn transition_matrix_requires_outdegree() {
        let g = Graph::from_pairs(3, [(0, 1), (1, 2), (2, 0), (0, 0)]).unwrap();
        assert!(NbOperator::transition_matrix(&g).is_ok());
        let path = Graph::from_pairs(2, [(0, 1)]).unwrap();
        assert!(matches!(
            NbOperator::transition_matrix(&path),
            Err(Error::ZeroOutdegree { .. })
        ));
    }

    #[test]
    fn perron_examples() {
        let m = NbOperator::from_dense(&[vec![0., 0., 1.], vec![2., 0., 0.], vec![1., 1., 0.]]).unwrap();
        let v = perron_value(&m, 1e-12).unwrap();
        assert!((v - 1.5214).abs() < 1e-4);
        assert_eq!(perron_value(&NbOperator::identity(5), 1e-12).unwrap(), 1.0);
        let k4 = families::complete(4).unwrap();
        assert!((rho(&k4, 1e-12).unwrap().value - 2.0).abs() < 1e-11);
    }

    #[test]
    fn perron_reports_non_convergence() {
        let m = NbOperator::from_dense(&[vec![0., 0., 1.], vec![2., 0., 0.], vec![1., 1., 0.]]).unwrap();
        match perron(&m, 1e-15, 3) {
            Err(Error::NoConvergence {
                iterations,
                vector,
                lower,
                upper,
                ..
            }) => {
                assert_eq!(iterations, 3);
                assert_eq!(vector.len(), 3);
                assert!(lower <= upper);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn walk_counts() {
        let k4 = families::complete(4).unwrap();
        for len in 0..8 {
            assert_eq!(count_nb_walks(&k4, 5, len), BigUint::from(1u64 << len));
        }
        let g = families::k4_minus_edge();
        assert_eq!(count_nb_walks(&g, 0, 1), BigUint::from(2u32));
        assert_eq!(enumerate_nb_walks(&g, 0, 1), 2);
        let all = count_nb_walks_all(&g, 7);
        assert_eq!(all.len(), 10);
        for (e, c) in all.iter().enumerate() {
            assert_eq!(*c, count_nb_walks(&g, e, 7));
            assert_eq!(*c, BigUint::from(enumerate_nb_walks(&g, e, 7)));
        }
    }

    #[test]
    fn rho_rejects_cycles() {
        let c5 = Graph::from_pairs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(matches!(rho(&c5, 1e-12), Err(Error::NotIrreducible(_))));
    }
}
