use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaxrep::generate::{random_circuit, random_digraph, random_set_family};
use relaxrep::oracles::{
    oracle_edge_weighted_path, oracle_monomial, oracle_packing, oracle_r_simple_k_path,
    oracle_r_simple_k_path_memo,
};
use relaxrep::solvers::{
    solve_edge_weighted_path, solve_monomial_detection, solve_r_simple_k_path, solve_rpq_packing,
    validate_packing, validate_walk,
};
use relaxrep::Budget;

#[test]
fn paths_match_walk_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=6);
        let r = rng.gen_range(1..=3);
        let g = random_digraph(&mut rng, n, 0.4, (-3, 5), false);
        let got = solve_r_simple_k_path(&g, r, k).unwrap();
        let want = oracle_r_simple_k_path(&g, r, k, Budget::default()).unwrap();
        assert_eq!(
            got.weight,
            want.as_ref().map(|x| x.0),
            "n={n} r={r} k={k}\n{g}"
        );
        assert_eq!(oracle_r_simple_k_path_memo(&g, r, k).unwrap(), got.weight);
        if got.found {
            assert!(validate_walk(&g, r, k, &got.witness));
        }
    }
}

#[test]
fn edge_weighted_paths_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..15 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=2);
        let g = random_digraph(&mut rng, n, 0.5, (0, 5), true);
        let got = solve_edge_weighted_path(&g, r, k).unwrap();
        let want = oracle_edge_weighted_path(&g, r, k, Budget::default()).unwrap();
        assert_eq!(got.weight, want.map(|x| x.0), "n={n} r={r} k={k}\n{g}");
    }
}

#[test]
fn packings_match_subfamily_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let n = rng.gen_range(2..=6);
        let q = rng.gen_range(1..=3.min(n));
        let p = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=2);
        let count = rng.gen_range(1..=6);
        let inst = random_set_family(&mut rng, n, count, q, (1, 5), false).with_params(r, p);
        let got = solve_rpq_packing(&inst).unwrap();
        let want = oracle_packing(&inst, Budget::default()).unwrap();
        assert_eq!(got.weight, want.map(|x| x.0), "{inst}");
        if got.found {
            assert!(validate_packing(&inst, &got.witness));
        }
    }
}

#[test]
fn monomials_match_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=4);
        let c = random_circuit(&mut rng, n, 10);
        let w: Vec<i64> = (0..c.num_variables())
            .map(|_| rng.gen_range(-2..=4))
            .collect();
        let got = solve_monomial_detection(&c, r, k, Some(&w)).unwrap();
        let want = oracle_monomial(&c, r, k, Some(&w), 1 << 20).unwrap();
        assert_eq!(got.weight, want.map(|x| x.0), "r={r} k={k}\n{c}");
    }
}
