//! The pendant-vertex gadget: a spanning tree of max degree d in G' exists
//! exactly when G has a Hamiltonian path.

use relaxrep::graph::UndirectedGraph;
use relaxrep::oracles::oracle_hamiltonian_path;
use relaxrep::spanning::{hardness_gadget, has_degree_bounded_spanning_tree};

fn main() -> relaxrep::Result<()> {
    let path: UndirectedGraph = "graph 3 2 undirected\n1 2\n2 3\n".parse()?;
    let star: UndirectedGraph = "graph 4 3 undirected\n1 2\n1 3\n1 4\n".parse()?;
    for (name, g) in [("P3", path), ("K1,3", star)] {
        let h = hardness_gadget(&g, 3)?;
        println!(
            "{name}: gadget has {} vertices, degree-3 tree {}, Hamiltonian path {}",
            h.n(),
            has_degree_bounded_spanning_tree(&h, 3)?,
            oracle_hamiltonian_path(&g)?
        );
    }
    Ok(())
}
