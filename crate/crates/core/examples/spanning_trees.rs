//! Kirchhoff polynomial and degree-bounded spanning trees.

use relaxrep::graph::UndirectedGraph;
use relaxrep::spanning::{kirchhoff_polynomial, solve_degree_bounded_spanning_tree};

fn main() -> relaxrep::Result<()> {
    let triangle: UndirectedGraph = "graph 3 3 undirected\n1 2\n1 3\n2 3\n".parse()?;
    println!(
        "triangle tree polynomial: {}",
        kirchhoff_polynomial(&triangle)?
    );

    let k4: UndirectedGraph = "graph 4 6 undirected\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n".parse()?;
    let ones = vec![1.into(); k4.edges().len()];
    println!(
        "K4 spanning trees: {}",
        kirchhoff_polynomial(&k4)?.evaluate(&ones)
    );

    let star: UndirectedGraph = "graph 4 3 undirected\n1 2\n1 3\n1 4\n".parse()?;
    for d in [2, 3] {
        let res = solve_degree_bounded_spanning_tree(&star, d)?;
        println!(
            "star K1,3 with max degree {d}: found={} tree={:?}",
            res.found, res.tree
        );
    }
    Ok(())
}
