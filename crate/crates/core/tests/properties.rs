//! Cross-checks between exact evaluation and symbolic expansion.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relaxrep::generate::random_circuit;
use relaxrep::graph::UndirectedGraph;
use relaxrep::poly::Caps;
use relaxrep::spanning::{build_laplacian, integer_determinant, kirchhoff_polynomial};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn evaluation_matches_expansion(seed in any::<u64>(), n in 1usize..5, point in prop::collection::vec(-4i64..5, 4)) {
        let c = random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), n, 10);
        let nv = c.num_variables();
        let full = c.symbolic_expand(nv, Caps::NONE, 1 << 20).unwrap();
        prop_assert!(full.all_coefficients_positive());
        let x: Vec<BigInt> = point[..nv].iter().map(|&v| BigInt::from(v)).collect();
        prop_assert_eq!(c.evaluate(&x).unwrap(), full.evaluate(&x));
        let ones = vec![BigInt::from(1); nv];
        let total: BigInt = full.terms().values().sum();
        prop_assert_eq!(c.evaluate(&ones).unwrap(), total);
    }

    #[test]
    fn cofactor_matches_integer_determinant(
        n in 1usize..6,
        mask in any::<u16>(),
        values in prop::collection::vec(-3i64..4, 10),
    ) {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        let g = UndirectedGraph::new(n, edges).unwrap();
        let point: Vec<BigInt> = values[..g.edges().len()].iter().map(|&v| BigInt::from(v)).collect();
        let minor: Vec<Vec<BigInt>> = build_laplacian(&g)
            .evaluate(&point)
            .into_iter()
            .skip(1)
            .map(|row| row.into_iter().skip(1).collect())
            .collect();
        let k = kirchhoff_polynomial(&g).unwrap();
        prop_assert_eq!(k.evaluate(&point), integer_determinant(minor).unwrap());
    }
}
