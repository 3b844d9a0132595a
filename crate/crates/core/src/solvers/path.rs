//! Minimum-weight r-simple k-paths: walks on `k` vertices that visit no
//! vertex more than `r` times.

use serde::Serialize;

use super::{Candidates, Cell};
use crate::error::{param, Result};
use crate::graph::WeightedDigraph;
use crate::multiset::{MultisetVector, WeightedUniverse};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RSimplePathResult {
    pub found: bool,
    pub weight: Option<i64>,
    /// 0-based vertices of the walk, empty when not found.
    pub witness: Vec<usize>,
    /// Total number of stored entries after each layer.
    pub layer_sizes: Vec<usize>,
}

impl RSimplePathResult {
    fn none(layer_sizes: Vec<usize>) -> Self {
        RSimplePathResult {
            found: false,
            weight: None,
            witness: Vec::new(),
            layer_sizes,
        }
    }
}

/// Checks that `walk` follows arcs, has `k` vertices and repeats none more than `r` times.
pub fn validate_walk(g: &WeightedDigraph, r: u32, k: usize, walk: &[usize]) -> bool {
    if walk.len() != k || walk.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut count = vec![0u32; g.n()];
    for &v in walk {
        count[v] += 1;
        if count[v] > r {
            return false;
        }
    }
    walk.windows(2).all(|w| g.arcs().contains(&(w[0], w[1])))
}

pub fn solve_r_simple_k_path(g: &WeightedDigraph, r: u32, k: usize) -> Result<RSimplePathResult> {
    solve_r_simple_k_path_from(g, r, k, &vec![true; g.n()])
}

/// As [`solve_r_simple_k_path`], with walks restricted to start in `allowed_start`.
pub fn solve_r_simple_k_path_from(
    g: &WeightedDigraph,
    r: u32,
    k: usize,
    allowed_start: &[bool],
) -> Result<RSimplePathResult> {
    if k == 0 {
        return Err(param("k must be at least 1"));
    }
    if r == 0 {
        return Err(param("r must be at least 1"));
    }
    if allowed_start.len() != g.n() {
        return Err(param("start mask length differs from the vertex count"));
    }
    if g.n() == 0 {
        return Ok(RSimplePathResult::none(Vec::new()));
    }
    if r as usize >= k {
        return Ok(shortest_walk(g, k, allowed_start));
    }
    let k32 = u32::try_from(k).map_err(|_| param("k too large"))?;
    let n = g.n();
    let universe = WeightedUniverse::new(g.vertex_weights().to_vec());
    let in_arcs = g.in_arcs();
    // links: (previous vertex, entry index in its cell); usize::MAX marks the start.
    let mut layers: Vec<Vec<Cell<(usize, usize)>>> = Vec::with_capacity(k);
    let mut first = Vec::with_capacity(n);
    for (u, &allowed) in allowed_start.iter().enumerate() {
        let mut c = Candidates::new();
        if allowed {
            c.offer(
                MultisetVector::indicator(n, r, &[u])?,
                universe.weight_of(u),
                (usize::MAX, 0),
            );
        }
        first.push(c.into_representative(&universe, r, k32)?);
    }
    layers.push(first);
    for _ in 1..k {
        let prev = layers.last().expect("nonempty");
        let mut next = Vec::with_capacity(n);
        for (v, arcs) in in_arcs.iter().enumerate() {
            let mut c = Candidates::new();
            for &(u, _) in arcs {
                for (idx, e) in prev[u].family.entries().iter().enumerate() {
                    if let Some(set) = e.set.add_element(v, k32) {
                        c.offer(set, e.weight + universe.weight_of(v), (u, idx));
                    }
                }
            }
            next.push(c.into_representative(&universe, r, k32)?);
        }
        layers.push(next);
    }
    let layer_sizes = layers
        .iter()
        .map(|cells| cells.iter().map(|c| c.family.len()).sum())
        .collect();
    let last = layers.last().expect("k >= 1");
    let Some(weight) = last
        .iter()
        .flat_map(|c| c.family.entries())
        .map(|e| e.weight)
        .min()
    else {
        return Ok(RSimplePathResult::none(layer_sizes));
    };
    // Among lightest walks, report the lexicographically smallest.
    let mut witness: Option<Vec<usize>> = None;
    for (end, cell) in last.iter().enumerate() {
        for (start_idx, e) in cell.family.entries().iter().enumerate() {
            if e.weight != weight {
                continue;
            }
            let (mut v, mut idx) = (end, start_idx);
            let mut walk = Vec::with_capacity(k);
            for layer in layers.iter().rev() {
                walk.push(v);
                (v, idx) = layer[v].links[idx];
            }
            walk.reverse();
            if witness.as_ref().is_none_or(|w| walk < *w) {
                witness = Some(walk);
            }
        }
    }
    let witness = witness.expect("a lightest entry exists");
    Ok(RSimplePathResult {
        found: true,
        weight: Some(weight),
        witness,
        layer_sizes,
    })
}

/// With `r >= k` no vertex can be repeated too often, so any walk qualifies.
fn shortest_walk(g: &WeightedDigraph, k: usize, allowed_start: &[bool]) -> RSimplePathResult {
    let n = g.n();
    let w = g.vertex_weights();
    let in_arcs = g.in_arcs();
    let mut best: Vec<Vec<Option<(i64, usize)>>> = Vec::with_capacity(k);
    best.push(
        (0..n)
            .map(|u| allowed_start[u].then_some((w[u], usize::MAX)))
            .collect(),
    );
    for i in 1..k {
        let row = (0..n)
            .map(|v| {
                let mut cur: Option<(i64, usize)> = None;
                for &(u, _) in &in_arcs[v] {
                    if let Some((pw, _)) = best[i - 1][u] {
                        if cur.is_none_or(|(c, _)| pw + w[v] < c) {
                            cur = Some((pw + w[v], u));
                        }
                    }
                }
                cur
            })
            .collect();
        best.push(row);
    }
    let layer_sizes = best
        .iter()
        .map(|row| row.iter().flatten().count())
        .collect();
    let Some(weight) = best[k - 1].iter().flatten().map(|&(c, _)| c).min() else {
        return RSimplePathResult::none(layer_sizes);
    };
    let mut witness: Option<Vec<usize>> = None;
    for end in 0..n {
        if best[k - 1][end].map(|(c, _)| c) != Some(weight) {
            continue;
        }
        let mut v = end;
        let mut walk = Vec::with_capacity(k);
        for i in (0..k).rev() {
            walk.push(v);
            v = best[i][v].expect("reachable").1;
        }
        walk.reverse();
        if witness.as_ref().is_none_or(|w| walk < *w) {
            witness = Some(walk);
        }
    }
    let witness = witness.expect("a lightest walk exists");
    RSimplePathResult {
        found: true,
        weight: Some(weight),
        witness,
        layer_sizes,
    }
}

/// A vertex-weighted stand-in for an arc-weighted digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeReduction {
    /// Vertices `0..n` are the originals with weight 0; vertex `n + a` sits on arc `a`
    /// and carries its weight.
    pub graph: WeightedDigraph,
    pub original_vertices: usize,
}

impl EdgeReduction {
    /// Number of vertices a walk of `k` original vertices uses after subdivision.
    pub fn reduced_k(k: usize) -> usize {
        2 * k - 1
    }
}

/// Subdivides every arc `(u, v)` with a vertex `x_uv` weighted like the arc.
pub fn reduce_edge_weighted_path(g: &WeightedDigraph) -> Result<EdgeReduction> {
    let aw = g
        .arc_weights()
        .ok_or_else(|| param("the edge-weighted reduction needs arc weights"))?;
    let n = g.n();
    let mut arcs = Vec::with_capacity(2 * g.arcs().len());
    for (a, &(u, v)) in g.arcs().iter().enumerate() {
        arcs.push((u, n + a));
        arcs.push((n + a, v));
    }
    let mut weights = vec![0; n];
    weights.extend_from_slice(aw);
    Ok(EdgeReduction {
        graph: WeightedDigraph::with_weights(n + g.arcs().len(), arcs, weights, None)?,
        original_vertices: n,
    })
}

/// Minimum total arc weight over r-simple walks on `k` vertices, solved on the subdivided graph.
pub fn solve_edge_weighted_path(
    g: &WeightedDigraph,
    r: u32,
    k: usize,
) -> Result<RSimplePathResult> {
    if k == 0 {
        return Err(param("k must be at least 1"));
    }
    let red = reduce_edge_weighted_path(g)?;
    let n = red.original_vertices;
    let starts: Vec<bool> = (0..red.graph.n()).map(|v| v < n).collect();
    let mut res = solve_r_simple_k_path_from(&red.graph, r, EdgeReduction::reduced_k(k), &starts)?;
    res.witness = res.witness.iter().copied().filter(|&v| v < n).collect();
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> WeightedDigraph {
        WeightedDigraph::new(2, vec![(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn two_cycle_examples() {
        let g = two_cycle();
        let res = solve_r_simple_k_path(&g, 2, 4).unwrap();
        assert!(res.found);
        assert_eq!(res.weight, Some(4));
        assert_eq!(res.witness, vec![0, 1, 0, 1]);
        assert!(validate_walk(&g, 2, 4, &res.witness));
        assert!(!solve_r_simple_k_path(&g, 2, 5).unwrap().found);
        assert!(solve_r_simple_k_path(&g, 3, 5).unwrap().found);
        assert!(solve_r_simple_k_path(&g, 1, 0).is_err());
    }

    #[test]
    fn isolated_vertex() {
        let g = WeightedDigraph::new(1, vec![]).unwrap();
        assert!(!solve_r_simple_k_path(&g, 1, 2).unwrap().found);
        let res = solve_r_simple_k_path(&g, 1, 1).unwrap();
        assert_eq!(res.witness, vec![0]);
    }

    #[test]
    fn negative_weights_pick_lightest() {
        let g = WeightedDigraph::with_weights(
            3,
            vec![(0, 1), (1, 2), (2, 0), (1, 0)],
            vec![5, -3, 1],
            None,
        )
        .unwrap();
        let res = solve_r_simple_k_path(&g, 1, 2).unwrap();
        assert_eq!(res.weight, Some(-2));
        let res = solve_r_simple_k_path(&g, 2, 3).unwrap();
        assert_eq!(res.weight, Some(-1));
        assert!(validate_walk(&g, 2, 3, &res.witness));
    }

    #[test]
    fn edge_reduction_shape() {
        let g = WeightedDigraph::with_weights(2, vec![(0, 1)], vec![1, 1], Some(vec![5])).unwrap();
        let red = reduce_edge_weighted_path(&g).unwrap();
        assert_eq!(red.graph.n(), 3);
        assert_eq!(red.graph.arcs(), &[(0, 2), (2, 1)]);
        assert_eq!(red.graph.vertex_weights(), &[0, 0, 5]);
        let res = solve_edge_weighted_path(&g, 1, 2).unwrap();
        assert_eq!((res.weight, res.witness), (Some(5), vec![0, 1]));

        let empty = WeightedDigraph::with_weights(2, vec![], vec![1, 1], Some(vec![])).unwrap();
        assert_eq!(reduce_edge_weighted_path(&empty).unwrap().graph.n(), 2);
        assert!(!solve_edge_weighted_path(&empty, 1, 2).unwrap().found);
    }

    #[test]
    fn triangle_with_arc_weights() {
        let g = WeightedDigraph::with_weights(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![1; 3],
            Some(vec![1, 2, 3]),
        )
        .unwrap();
        // Paths on three vertices: 1-2-3 (3), 2-3-1 (5), 3-1-2 (4).
        let res = solve_edge_weighted_path(&g, 1, 3).unwrap();
        assert_eq!(res.weight, Some(3));
        assert_eq!(res.witness, vec![0, 1, 2]);
    }
}
