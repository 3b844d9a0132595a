//! Finds lightest r-simple k-walks, vertex-weighted and arc-weighted.

use relaxrep::graph::WeightedDigraph;
use relaxrep::solvers::{solve_edge_weighted_path, solve_r_simple_k_path};

fn main() -> relaxrep::Result<()> {
    let g: WeightedDigraph =
        "graph 4 6 directed\nvweights 3 1 2 5\n1 2\n2 1\n2 3\n3 2\n3 4\n4 1\n".parse()?;
    for (r, k) in [(1, 4), (2, 4), (2, 6), (3, 7)] {
        let res = solve_r_simple_k_path(&g, r, k)?;
        match res.weight {
            Some(w) => println!(
                "r={r} k={k}: weight {w}, walk {:?}",
                res.witness.iter().map(|v| v + 1).collect::<Vec<_>>()
            ),
            None => println!("r={r} k={k}: no r-simple walk"),
        }
    }
    let h: WeightedDigraph = "graph 3 3 directed\naweights\n1 2 1\n2 3 2\n3 1 3\n".parse()?;
    let res = solve_edge_weighted_path(&h, 1, 3)?;
    println!("arc-weighted triangle, r=1 k=3: weight {:?}", res.weight);
    Ok(())
}
