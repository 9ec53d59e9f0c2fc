mod common;

use nbrw::families;
use nbrw::walk::simulate_bits;
use nbrw::{exact_bit_pdf, lambda_value, sample_walk, truncated_variance, Error, Graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn chi_square_p_value(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    ChiSquared::new((counts.len() - 1) as f64).unwrap().sf(stat)
}

#[test]
fn marginals_are_uniform_over_darts() {
    let mut rng = common::rng(31);
    let graphs = [
        families::k4_minus_edge(),
        families::random_nb_irreducible(&mut rng, 7, true),
    ];
    for g in &graphs {
        for step in [0, 1, 7] {
            let mut counts = vec![0u64; g.dart_count()];
            for _ in 0..100_000 {
                counts[sample_walk(g, step, &mut rng).unwrap().darts[step]] += 1;
            }
            let p = chi_square_p_value(&counts);
            assert!(p > 1e-6, "step {step}: p = {p}");
        }
    }
}

/// Random graphs whose out-degrees take at most two values above one.
fn two_class_graphs(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = common::rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let g = common::corpus_graph(&mut rng, 8);
        if exact_bit_pdf(&g, 0).is_ok() {
            out.push(g);
        }
    }
    out
}

#[test]
fn exact_mean_is_l_log_lambda() {
    for g in two_class_graphs(32, 25) {
        let (lambda, lambda_f) = lambda_value(&g).unwrap();
        for len in [1, 6, 25] {
            let pdf = exact_bit_pdf(&g, len).unwrap();
            assert_eq!(pdf.expected_counts(), pdf.stationary_counts());
            // sum_j E[c_j] log2 v_j = l log2 Lambda, compared through the
            // exact exponent of each prime.
            let mut implied = nbrw::ExactValue::one();
            for (c, &v) in pdf.expected_counts().iter().zip(&pdf.outdeg_values) {
                let q = c / BigRational::from_integer(BigInt::from(len));
                let q = nbrw::exact::Exponent::new(q.numer().try_into().unwrap(), q.denom().try_into().unwrap());
                implied = implied * nbrw::ExactValue::from_int(v as u64).pow(q);
            }
            assert_eq!(implied, lambda);
            assert!((pdf.mean_bits() - len as f64 * lambda_f.log2()).abs() < 1e-9);
        }
    }
}

#[test]
fn exact_variance_matches_truncated_formula() {
    for g in two_class_graphs(33, 25) {
        for len in [1, 2, 9, 30] {
            let pdf = exact_bit_pdf(&g, len).unwrap();
            let oracle = truncated_variance(&g, len).unwrap() * len as f64;
            assert!(
                (pdf.variance_bits() - oracle).abs() < 1e-9,
                "{} vs {oracle}",
                pdf.variance_bits()
            );
        }
    }
}

#[test]
fn too_many_outdegree_classes() {
    let g = Graph::from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 3), (2, 3)]).unwrap();
    assert!(matches!(exact_bit_pdf(&g, 2), Err(Error::TooManyOutdegrees(3))));
}

#[test]
fn variance_growth_dichotomy_trend() {
    let k4e = families::k4_minus_edge();
    let per_step: Vec<f64> = [200, 400, 800]
        .iter()
        .map(|&l| {
            let s = simulate_bits(&k4e, l, 20_000, 34 + l as u64, 4).unwrap().stats;
            s.variance_of_r / l as f64
        })
        .collect();
    let centre = per_step.iter().sum::<f64>() / 3.0;
    for v in &per_step {
        assert!((v - centre).abs() <= 0.15 * centre, "{per_step:?}");
    }

    let wheel = families::wheel(5, 2, 3).unwrap();
    let var = |l: usize| {
        simulate_bits(&wheel, l, 20_000, 35 + l as u64, 4)
            .unwrap()
            .stats
            .variance_of_r
    };
    let base = var(100);
    for l in [200, 400, 800] {
        assert!(var(l) <= 1.5 * base, "l={l}");
        assert!(
            truncated_variance(&wheel, l).unwrap() * l as f64 <= 1.5 * truncated_variance(&wheel, 100).unwrap() * 100.0
        );
    }
}
