use num_bigint::BigInt;
use proptest::prelude::*;

use modlap::analysis::{self, forest};
use modlap::compute::{compute_exact, compute_float, EngineRequest};
use modlap::dense::compute_b_exact_dense;
use modlap::families;
use modlap::heat::{self, EngineChoice};
use modlap::scalar::parse_rational;
use modlap::tree::compute_b_tree;
use modlap::{Graph, Rational};

fn tree_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| families::random_tree(n, seed).unwrap())
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0.0..1.0f64).prop_map(|(n, seed, density)| {
        let max_m = n * (n - 1) / 2;
        let m = (n - 1) + ((max_m - (n - 1)) as f64 * density) as usize;
        families::random_connected(n, m, seed).unwrap()
    })
}

fn h_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.1), Just(1.0), Just(10.0), 0.01..100.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in graph_strategy(30)) {
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn tree_engine_matches_dense(t in tree_strategy(60), h in h_strategy()) {
        let a = compute_float(&t, h, EngineRequest::Tree).unwrap();
        let b = compute_float(&t, h, EngineRequest::Dense).unwrap();
        prop_assert!(a.matrix.max_abs_diff(&b.matrix) < 1e-12);
    }

    #[test]
    fn exact_engines_agree(t in tree_strategy(9), p in 1i64..20, q in 1i64..20) {
        let h = Rational::new(BigInt::from(p), BigInt::from(q));
        let a = compute_exact(&t, &h, EngineRequest::Tree).unwrap();
        let b = compute_b_exact_dense(&t, &h).unwrap();
        prop_assert_eq!(a.matrix, b.matrix);
    }

    #[test]
    fn doubly_stochastic_and_diagonal_max(g in graph_strategy(40), h in h_strategy()) {
        let b = compute_float(&g, h, EngineRequest::Auto).unwrap();
        prop_assert!(analysis::check_doubly_stochastic(&b.matrix, &1e-10).passed());
        prop_assert!(analysis::check_diagonal_dominance(&b.matrix, &1e-12).passed());
        prop_assert!(analysis::check_pendant_relation(&g, &b.matrix, &h, &1e-10).passed());
    }

    #[test]
    fn tree_properties(t in tree_strategy(80), h in h_strategy()) {
        let b = compute_b_tree(&t, &h).unwrap();
        prop_assert!(analysis::check_tree_decay(&t, &b.matrix, &h, &1e-12).passed());
        prop_assert!(analysis::check_diag_lower_bound(&t, &b.matrix, &h, &1e-12).passed());
        prop_assert!(analysis::check_multiplier_bounds_all_roots(&t, &h, &1e-12).passed());
    }

    #[test]
    fn forest_oracle_matches_determinant(g in graph_strategy(7)) {
        prop_assume!(g.m() <= forest::MAX_ORACLE_EDGES);
        let c = forest::forest_count_oracle(&g).unwrap();
        prop_assert_eq!(BigInt::from(c.xi_total), forest::det_modified_laplacian(&g));
    }

    #[test]
    fn heat_step_conserves_mass(g in graph_strategy(30), h in h_strategy(), u in prop::collection::vec(-10.0..10.0f64, 30)) {
        let u = u[..g.n()].to_vec();
        let s = heat::make_heat_solver(&g, h, EngineChoice::Auto).unwrap();
        let next = s.apply(&u).unwrap();
        let (m0, m1): (f64, f64) = (u.iter().sum(), next.iter().sum());
        prop_assert!((m0 - m1).abs() <= 1e-12 * u.iter().map(|x| x.abs()).sum::<f64>().max(1.0));
        let back = s.operator(&next);
        for (a, b) in back.iter().zip(&u) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn rational_parse_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let x = Rational::new(BigInt::from(p), BigInt::from(q));
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }
}
