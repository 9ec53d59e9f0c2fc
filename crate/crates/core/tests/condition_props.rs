mod common;

use std::collections::HashSet;

use nbrw::conditions::is_nb_cycle;
use nbrw::exact::Exponent;
use nbrw::families;
use nbrw::{
    check_cycle_condition, check_suspended_path_condition, find_improving_cycle, lambda_value,
    suspended_path_decomposition, verdict_rho_equals_lambda, ExactValue, PathFunctionOnDarts, Verdict,
};

#[test]
fn suspended_paths_partition_the_darts() {
    for g in common::corpus(11, 150, 10) {
        let paths = suspended_path_decomposition(&g).unwrap();
        assert_eq!(paths.iter().map(|p| p.len()).sum::<usize>(), g.dart_count());
        let seen: HashSet<_> = paths.iter().flat_map(|p| p.darts.iter().copied()).collect();
        assert_eq!(seen.len(), g.dart_count());
    }
}

#[test]
fn weighted_geometric_mean_of_g_is_lambda() {
    for g in common::corpus(12, 150, 10) {
        let paths = suspended_path_decomposition(&g).unwrap();
        let total = g.dart_count() as i64;
        // g(P)^|P| = sqrt(outdeg * indeg), so the product needs no g values.
        let product: ExactValue = paths
            .iter()
            .map(|p| ExactValue::from_int((p.outdeg * p.indeg) as u64).pow(Exponent::new(1, 2 * total)))
            .product();
        let (lambda, _) = lambda_value(&g).unwrap();
        assert_eq!(product, lambda);
    }
}

#[test]
fn g_is_symmetric_under_reversal() {
    for g in common::corpus(13, 100, 10) {
        let paths = suspended_path_decomposition(&g).unwrap();
        let owner: std::collections::HashMap<usize, usize> = paths
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.darts.iter().map(move |&d| (d, i)))
            .collect();
        for p in &paths {
            let rev = &paths[owner[&g.reverse(*p.darts.last().unwrap())]];
            let back: Vec<usize> = p.darts.iter().rev().map(|&d| g.reverse(d)).collect();
            assert_eq!(rev.darts, back);
            assert_eq!(rev.g_value, p.g_value);
            assert_eq!((rev.indeg, rev.outdeg), (p.outdeg, p.indeg));
        }
    }
}

#[test]
fn checkers_agree_with_each_other_and_with_rho() {
    let corpus = common::corpus(14, 220, 10);
    let mut equal = 0;
    for g in &corpus {
        let path = check_suspended_path_condition(g).unwrap();
        let cycle = check_cycle_condition(g).unwrap();
        assert_eq!(path.holds, cycle.holds, "{}", g.to_text());
        assert!(path.witness_is_valid(g));
        assert!(cycle.witness_is_valid(g));
        let v = verdict_rho_equals_lambda(g).unwrap();
        match v.verdict {
            Verdict::Equal => {
                equal += 1;
                assert!(v.gap.abs() <= 1e-8, "{}", v.gap);
            }
            Verdict::Strict => assert!(v.gap >= 1e-6, "{}", v.gap),
        }
    }
    assert!(
        equal >= 20 && equal <= corpus.len() - 20,
        "unbalanced corpus: {equal} equal"
    );
}

#[test]
fn improving_cycle_beats_the_mean() {
    for g in common::corpus(15, 120, 10) {
        let f = PathFunctionOnDarts::log2_g(&g).unwrap();
        let c = find_improving_cycle(&g, &f).unwrap();
        assert!(is_nb_cycle(&g, &c.darts));
        assert!((f.mean_over(&c.darts) - c.mean).abs() < 1e-12);
        assert!(c.mean >= f.mean() - 1e-12);
        let holds = check_cycle_condition(&g).unwrap().holds;
        if !holds {
            assert!(c.mean > f.mean() + 1e-12);
        }
    }
}

#[test]
fn family_verdicts() {
    for k in 1..=5 {
        assert_eq!(
            verdict_rho_equals_lambda(&families::hk(k).unwrap()).unwrap().verdict,
            Verdict::Equal
        );
    }
    assert_eq!(
        verdict_rho_equals_lambda(&families::k4_minus_edge()).unwrap().verdict,
        Verdict::Strict
    );
}
