//! Normalized variance `Var[R_l] / l` of the bit count of a stationary walk.
//!
//! With `f_e = log2 outdeg(e) - log2 Lambda`, `nu` the stationary law and
//! `N = diag(nu)`,
//!
//! ```text
//! Var[R_l] / l = f'Nf + 2 sum_{d=1}^{l-1} (1 - d/l) f'N Pi^d f
//! lim          = -f'Nf + 2 f'N x,   (I - Pi + 1 nu') x = f
//! ```
//!
//! The limit never needs an eigendecomposition of `Pi`.

use nalgebra::{DMatrix, DVector};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::conditions::lambda_value;
use crate::error::{require_irreducible, Error, Result};
use crate::graph::Graph;
use crate::operator::{stationary_distribution, NbOperator};

/// `f_e = log2 outdeg(e) - log2 Lambda`.
pub fn centered_bits(g: &Graph) -> Result<Vec<f64>> {
    let (lambda, _) = lambda_value(g)?;
    let shift = lambda.log2();
    Ok((0..g.dart_count())
        .map(|e| (g.outdeg(e) as f64).log2() - shift)
        .collect())
}

/// `Var[R_l] / l` for a stationary chain `(pi, nu)` and a `nu`-centered `f`.
pub fn chain_truncated_variance(pi: &NbOperator, nu: &[f64], f: &[f64], len: usize) -> Result<f64> {
    if len == 0 {
        return Err(Error::InvalidParameter("walk length must be at least 1".into()));
    }
    let weighted: Vec<f64> = f.iter().zip(nu).map(|(a, b)| a * b).collect();
    let dot = |v: &[f64]| weighted.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let mut total = dot(f);
    let mut cur = f.to_vec();
    let mut next = vec![0.0; f.len()];
    let l = len as f64;
    for d in 1..len {
        pi.apply(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        total += 2.0 * (1.0 - d as f64 / l) * dot(&cur);
    }
    Ok(total)
}

/// `Var[R_l] / l` for the walk started from the uniform dart distribution.
pub fn truncated_variance(g: &Graph, len: usize) -> Result<f64> {
    require_irreducible(g)?;
    let pi = NbOperator::transition_matrix(g)?;
    chain_truncated_variance(&pi, &stationary_distribution(g), &centered_bits(g)?, len)
}

/// Limit of `Var[R_l] / l` for a stationary chain, via the fundamental
/// matrix `(I - Pi + 1 nu')^{-1}` with one step of iterative refinement.
pub fn chain_asymptotic_variance(pi: &DMatrix<f64>, nu: &[f64], f: &[f64]) -> Result<f64> {
    let n = nu.len();
    if pi.nrows() != n || pi.ncols() != n || f.len() != n {
        return Err(Error::InvalidParameter("dimension mismatch".into()));
    }
    let nu_v = DVector::from_column_slice(nu);
    let f_v = DVector::from_column_slice(f);
    let z = DMatrix::identity(n, n) - pi + DVector::repeat(n, 1.0) * nu_v.transpose();
    let lu = z.clone().lu();
    let mut x = lu.solve(&f_v).ok_or(Error::SingularSystem)?;
    let residual = &f_v - &z * &x;
    x += lu.solve(&residual).ok_or(Error::SingularSystem)?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem);
    }
    let nf = f_v.component_mul(&nu_v);
    Ok(-nf.dot(&f_v) + 2.0 * nf.dot(&x))
}

pub fn asymptotic_variance(g: &Graph) -> Result<f64> {
    require_irreducible(g)?;
    let pi = NbOperator::transition_matrix(g)?;
    let n = pi.dimension();
    let mut dense = DMatrix::zeros(n, n);
    for i in 0..n {
        for (j, v) in pi.row(i) {
            dense[(i, j)] += v;
        }
    }
    chain_asymptotic_variance(&dense, &stationary_distribution(g), &centered_bits(g)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceMethod {
    FundamentalSolve,
    TruncatedSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceReport {
    pub asymptotic_limit: f64,
    /// `(l, Var[R_l] / l)`, ascending in `l`.
    pub truncated_values: Vec<(usize, f64)>,
    pub method: VarianceMethod,
}

impl VarianceReport {
    /// Fundamental-matrix limit plus truncated values at the given lengths.
    pub fn compute(g: &Graph, lengths: &[usize]) -> Result<Self> {
        let asymptotic_limit = asymptotic_variance(g)?;
        let mut lengths = lengths.to_vec();
        lengths.sort_unstable();
        lengths.dedup();
        let truncated_values = lengths
            .into_iter()
            .map(|l| truncated_variance(g, l).map(|v| (l, v)))
            .collect::<Result<_>>()?;
        Ok(VarianceReport {
            asymptotic_limit,
            truncated_values,
            method: VarianceMethod::FundamentalSolve,
        })
    }

    /// Truncated sum only; the limit is the average at `l` and `l + 1` for
    /// the largest requested `l`, which damps period-two oscillation.
    pub fn truncated_only(g: &Graph, lengths: &[usize]) -> Result<Self> {
        let mut lengths = lengths.to_vec();
        lengths.sort_unstable();
        lengths.dedup();
        let last = *lengths
            .last()
            .ok_or_else(|| Error::InvalidParameter("no lengths given".into()))?;
        let truncated_values: Vec<(usize, f64)> = lengths
            .into_iter()
            .map(|l| truncated_variance(g, l).map(|v| (l, v)))
            .collect::<Result<_>>()?;
        let asymptotic_limit = 0.5 * (truncated_values.last().unwrap().1 + truncated_variance(g, last + 1)?);
        Ok(VarianceReport {
            asymptotic_limit,
            truncated_values,
            method: VarianceMethod::TruncatedSum,
        })
    }
}

impl Serialize for VarianceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VarianceReport", 3)?;
        s.serialize_field("limit", &self.asymptotic_limit)?;
        s.serialize_field("truncated", &self.truncated_values)?;
        s.serialize_field("method", &self.method)?;
        s.end()
    }
}
