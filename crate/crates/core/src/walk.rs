//! Non-backtracking random walks and the number of random bits they use.
//!
//! A length-`l` walk `(e_0, ..., e_l)` starts from a uniform dart and
//! consumes `R_l = sum_{i<l} log2 outdeg(e_i)` bits. Bit values are tracked
//! as integer count vectors over the distinct out-degrees above one, so
//! aggregation never keys on floats.
//!
//! Monte Carlo runs are split into fixed batches of [`BATCH_SIZE`] samples;
//! batch `b` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `b`.
//! Results are therefore identical for any worker count.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{require_irreducible, Error, Result};
use crate::graph::{DartId, Graph};

pub const BATCH_SIZE: usize = 1000;

/// Largest number of distinct out-degrees above one supported by
/// [`exact_bit_pdf`]; its state space grows like `|E| * l^k`.
pub const MAX_EXACT_OUTDEG_CLASSES: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct WalkSample {
    pub darts: Vec<DartId>,
    pub bits: f64,
}

/// Distinct out-degrees above one, ascending, and each dart's class index.
fn outdeg_classes(g: &Graph) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut values: Vec<usize> = (0..g.dart_count()).map(|e| g.outdeg(e)).filter(|&d| d > 1).collect();
    values.sort_unstable();
    values.dedup();
    let class = (0..g.dart_count())
        .map(|e| values.binary_search(&g.outdeg(e)).ok())
        .collect();
    (values, class)
}

fn bits_of(values: &[usize], counts: &[u32]) -> f64 {
    values
        .iter()
        .zip(counts)
        .map(|(&v, &c)| c as f64 * (v as f64).log2())
        .sum()
}

/// One walk from the stationary distribution.
pub fn sample_walk<R: Rng + ?Sized>(g: &Graph, len: usize, rng: &mut R) -> Result<WalkSample> {
    require_irreducible(g)?;
    let mut darts = Vec::with_capacity(len + 1);
    let mut e = rng.random_range(0..g.dart_count());
    darts.push(e);
    let mut bits = 0.0;
    for _ in 0..len {
        let succ = g.dart_transitions(e);
        bits += (succ.len() as f64).log2();
        e = succ[rng.random_range(0..succ.len())];
        darts.push(e);
    }
    Ok(WalkSample { darts, bits })
}

/// Count vector of a single walk, without materializing the darts.
fn walk_counts<R: Rng + ?Sized>(g: &Graph, class: &[Option<usize>], len: usize, rng: &mut R, counts: &mut [u32]) {
    counts.iter_mut().for_each(|c| *c = 0);
    let mut e = rng.random_range(0..g.dart_count());
    for _ in 0..len {
        let succ = g.dart_transitions(e);
        if let Some(j) = class[e] {
            counts[j] += 1;
            e = succ[rng.random_range(0..succ.len())];
        } else {
            e = succ[0];
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BitStats {
    pub len: usize,
    pub sample_count: usize,
    pub mean_bits_per_step: f64,
    /// Unbiased sample variance of `R_l`.
    pub variance_of_r: f64,
    /// Standard error of `mean_bits_per_step`.
    pub standard_error_of_mean: f64,
    pub seed: u64,
}

/// Empirical distribution of count vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct BitHistogram {
    pub len: usize,
    pub outdeg_values: Vec<usize>,
    pub counts: BTreeMap<Vec<u32>, u64>,
    pub total: u64,
}

impl BitHistogram {
    pub fn bits(&self, key: &[u32]) -> f64 {
        bits_of(&self.outdeg_values, key)
    }

    /// `(bits_per_step, probability)` rows sorted by bits.
    pub fn rows(&self) -> Vec<(f64, f64)> {
        let mut rows: Vec<_> = self
            .counts
            .iter()
            .map(|(k, &c)| (self.bits(k) / self.len.max(1) as f64, c as f64 / self.total as f64))
            .collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        rows
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.rows())
    }
}

fn rows_to_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("bits_per_step,probability\n");
    for (b, p) in rows {
        let _ = writeln!(out, "{b},{p}");
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BitSimulation {
    pub stats: BitStats,
    pub histogram: BitHistogram,
}

/// Monte Carlo estimate of the distribution of `R_l`.
pub fn simulate_bits(g: &Graph, len: usize, samples: usize, seed: u64, workers: usize) -> Result<BitSimulation> {
    require_irreducible(g)?;
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    if workers == 0 {
        return Err(Error::InvalidParameter("worker count must be positive".into()));
    }
    let (values, class) = outdeg_classes(g);
    let batches = samples.div_ceil(BATCH_SIZE);
    let run_batch = |b: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let n = BATCH_SIZE.min(samples - b * BATCH_SIZE);
        let mut counts = vec![0u32; values.len()];
        let mut keys = Vec::with_capacity(n);
        for _ in 0..n {
            walk_counts(g, &class, len, &mut rng, &mut counts);
            keys.push(counts.clone());
        }
        keys
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let per_batch: Vec<Vec<Vec<u32>>> = pool.install(|| (0..batches).into_par_iter().map(run_batch).collect());

    let mut histogram = BTreeMap::new();
    let mut r = Vec::with_capacity(samples);
    for key in per_batch.into_iter().flatten() {
        r.push(bits_of(&values, &key));
        *histogram.entry(key).or_insert(0u64) += 1;
    }
    let n = r.len() as f64;
    let mean = r.iter().sum::<f64>() / n;
    let variance = r.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    let steps = len.max(1) as f64;
    let stats = BitStats {
        len,
        sample_count: r.len(),
        mean_bits_per_step: mean / steps,
        variance_of_r: variance,
        standard_error_of_mean: (variance / n).sqrt() / steps,
        seed,
    };
    Ok(BitSimulation {
        stats,
        histogram: BitHistogram {
            len,
            outdeg_values: values,
            counts: histogram,
            total: samples as u64,
        },
    })
}

/// Sample mean and variance of `R_l`; see [`simulate_bits`].
pub fn estimate_bit_stats(g: &Graph, len: usize, samples: usize, seed: u64, workers: usize) -> Result<BitStats> {
    simulate_bits(g, len, samples, seed, workers).map(|s| s.stats)
}

/// Exact distribution of `R_l` as rational probabilities over count vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactBitPdf {
    pub len: usize,
    pub outdeg_values: Vec<usize>,
    pub support: BTreeMap<Vec<u32>, BigRational>,
    /// Number of darts with each out-degree in `outdeg_values`.
    dart_counts: Vec<usize>,
    dart_total: usize,
}

impl ExactBitPdf {
    pub fn bits(&self, key: &[u32]) -> f64 {
        bits_of(&self.outdeg_values, key)
    }

    pub fn total_probability(&self) -> BigRational {
        self.support.values().fold(BigRational::zero(), |acc, p| acc + p)
    }

    /// `E[c_j]`, expected number of steps taken from out-degree
    /// `outdeg_values[j]`.
    pub fn expected_counts(&self) -> Vec<BigRational> {
        (0..self.outdeg_values.len())
            .map(|j| {
                self.support.iter().fold(BigRational::zero(), |acc, (k, p)| {
                    acc + p * BigRational::from_integer(BigInt::from(k[j]))
                })
            })
            .collect()
    }

    /// `l * n_j / |E|`: the expected counts implied by `E[R_l] = l log2 Lambda`.
    pub fn stationary_counts(&self) -> Vec<BigRational> {
        self.dart_counts
            .iter()
            .map(|&n| BigRational::new(BigInt::from(self.len * n), BigInt::from(self.dart_total)))
            .collect()
    }

    /// Exact covariance matrix of the count vector.
    pub fn count_covariance(&self) -> Vec<Vec<BigRational>> {
        let k = self.outdeg_values.len();
        let mean = self.expected_counts();
        let mut cov = vec![vec![BigRational::zero(); k]; k];
        for (key, p) in &self.support {
            for a in 0..k {
                for b in 0..k {
                    let prod = BigRational::from_integer(BigInt::from(key[a] as u64 * key[b] as u64));
                    cov[a][b] += p * prod;
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                cov[a][b] -= &mean[a] * &mean[b];
            }
        }
        cov
    }

    pub fn mean_bits(&self) -> f64 {
        self.expected_counts()
            .iter()
            .zip(&self.outdeg_values)
            .map(|(c, &v)| c.to_f64().unwrap_or(f64::NAN) * (v as f64).log2())
            .sum()
    }

    /// `Var[R_l] = sum_{a,b} log2 v_a log2 v_b Cov(c_a, c_b)`.
    pub fn variance_bits(&self) -> f64 {
        let cov = self.count_covariance();
        let logs: Vec<f64> = self.outdeg_values.iter().map(|&v| (v as f64).log2()).collect();
        let mut total = 0.0;
        for (a, row) in cov.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                total += logs[a] * logs[b] * c.to_f64().unwrap_or(f64::NAN);
            }
        }
        total
    }

    pub fn rows(&self) -> Vec<(f64, f64)> {
        let mut rows: Vec<_> = self
            .support
            .iter()
            .map(|(k, p)| (self.bits(k) / self.len.max(1) as f64, p.to_f64().unwrap_or(f64::NAN)))
            .collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        rows
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.rows())
    }

    /// Total variation distance to an empirical histogram of the same graph
    /// and length.
    pub fn tv_distance(&self, hist: &BitHistogram) -> f64 {
        let mut keys: Vec<&Vec<u32>> = self.support.keys().chain(hist.counts.keys()).collect();
        keys.sort();
        keys.dedup();
        0.5 * keys
            .into_iter()
            .map(|k| {
                let p = self.support.get(k).and_then(|p| p.to_f64()).unwrap_or(0.0);
                let q = hist.counts.get(k).map_or(0.0, |&c| c as f64 / hist.total as f64);
                (p - q).abs()
            })
            .sum::<f64>()
    }
}

/// Exact PDF of `R_l` by dynamic programming over (dart, count vector).
///
/// All paths of length `l` share the denominator `|E| * L^l` with `L` the
/// lcm of the out-degrees, so the program propagates integer numerators and
/// reduces only at the end.
pub fn exact_bit_pdf(g: &Graph, len: usize) -> Result<ExactBitPdf> {
    require_irreducible(g)?;
    let (values, class) = outdeg_classes(g);
    if values.len() > MAX_EXACT_OUTDEG_CLASSES {
        return Err(Error::TooManyOutdegrees(values.len()));
    }
    let n = g.dart_count();
    let lcm = (0..n).map(|e| g.outdeg(e) as u64).fold(1u64, |a, b| a.lcm(&b));
    let mult: Vec<u64> = (0..n).map(|e| lcm / g.outdeg(e) as u64).collect();

    type Key = [u32; MAX_EXACT_OUTDEG_CLASSES];
    let mut layer: Vec<HashMap<Key, BigUint>> = (0..n)
        .map(|_| HashMap::from([([0; MAX_EXACT_OUTDEG_CLASSES], BigUint::one())]))
        .collect();
    for _ in 0..len {
        let mut next: Vec<HashMap<Key, BigUint>> = vec![HashMap::new(); n];
        for (e, states) in layer.iter().enumerate() {
            for (key, w) in states {
                let mut key = *key;
                if let Some(j) = class[e] {
                    key[j] += 1;
                }
                let w = if mult[e] == 1 { w.clone() } else { w * mult[e] };
                for &f in g.dart_transitions(e) {
                    *next[f].entry(key).or_default() += &w;
                }
            }
        }
        layer = next;
    }

    let mut numerators: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
    for states in layer {
        for (key, w) in states {
            *numerators.entry(key[..values.len()].to_vec()).or_default() += w;
        }
    }
    let denominator = BigInt::from(BigUint::from(n) * BigUint::from(lcm).pow(len as u32));
    let support = numerators
        .into_iter()
        .map(|(k, w)| (k, BigRational::new(BigInt::from(w), denominator.clone())))
        .collect();
    let dart_counts = values
        .iter()
        .map(|&v| (0..n).filter(|&e| g.outdeg(e) == v).count())
        .collect();
    Ok(ExactBitPdf {
        len,
        outdeg_values: values,
        support,
        dart_counts,
        dart_total: n,
    })
}
