#![allow(dead_code)]

use nalgebra::DMatrix;
use nbrw::families;
use nbrw::{EdgeKind, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixed corpus of NB-irreducible multigraphs with at most `max_n` vertices:
/// mostly unstructured random multigraphs, plus random regular, biregular,
/// subdivided and wheel graphs so that both verdicts occur.
pub fn corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = rng(seed);
    (0..count).map(|_| corpus_graph(&mut rng, max_n)).collect()
}

pub fn corpus_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    match rng.random_range(0..10) {
        0 => {
            let n = rng.random_range(2..=max_n.min(8));
            let d = rng.random_range(3..=4);
            families::random_regular(rng, n, d, true)
        }
        1 => {
            let n1 = rng.random_range(1..=3);
            let d2 = rng.random_range(2..=3);
            let d1 = if d2 == 2 {
                rng.random_range(3..=4)
            } else {
                2 * rng.random_range(1..=2)
            };
            match families::random_biregular(rng, n1, d1, d2) {
                Some(g) if g.vertex_count() <= max_n => g,
                _ => families::random_nb_irreducible(rng, max_n, true),
            }
        }
        2 => {
            // Even n keeps the cubic graph free of half-loops.
            let n = 2 * rng.random_range(1..=(max_n / 4).max(1));
            let base = families::random_regular(rng, n, 3, false);
            families::subdivide(&base, 2).unwrap()
        }
        3 => {
            let n = rng.random_range(3..=max_n - 1);
            families::wheel(n, 1, 1).unwrap()
        }
        _ => families::random_nb_irreducible(rng, max_n, true),
    }
}

/// Real root of `x^3 - x - 2` by bisection.
pub fn cubic_root() -> f64 {
    let p = |x: f64| x * x * x - x - 2.0;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Perron value of `B` from the vertex side: for graphs without half-loops,
/// `det(I - uB) = (1 - u^2)^(m - n) det(I - uA + u^2 (D - I))`, so `rho` is
/// the largest `x` at which `x^2 I - x A + D - I` stops being positive
/// definite. Scans down from the trivial bound, then bisects.
pub fn vertex_side_rho(g: &Graph) -> f64 {
    assert!(g.edges().iter().all(|e| e.kind != EdgeKind::HalfLoop));
    let n = g.vertex_count();
    let mut adj = DMatrix::<f64>::zeros(n, n);
    for d in g.darts() {
        adj[(d.tail, d.head)] += 1.0;
    }
    let pd = |x: f64| {
        let mut h = -x * &adj;
        for v in 0..n {
            h[(v, v)] += x * x + g.degree(v) as f64 - 1.0;
        }
        h.cholesky().is_some()
    };
    let step = 1e-3;
    let mut hi = g.max_degree() as f64;
    while pd(hi - step) {
        hi -= step;
        assert!(hi > 1.0, "no crossing above 1");
    }
    let mut lo = hi - step;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if pd(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
