//! Brute-force reference implementations. Nothing here calls into the
//! solvers, separators or representative-set code; agreement with them is
//! the evidence that those are correct.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::budget::Budget;
use crate::circuit::ArithmeticCircuit;
use crate::error::{param, Error, Result};
use crate::graph::{UndirectedGraph, WeightedDigraph};
use crate::poly::{Caps, TruncatedPolynomial};
use crate::solvers::SetFamilyInstance;

/// Counts enumeration steps and refuses once the budget is spent.
struct Meter {
    what: &'static str,
    used: u64,
    budget: Budget,
}

impl Meter {
    fn new(what: &'static str, budget: Budget) -> Self {
        Meter {
            what,
            used: 0,
            budget,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget.0 {
            return Err(Error::Budget {
                what: self.what.to_string(),
                needed: u128::from(self.used),
                limit: self.budget.0,
            });
        }
        Ok(())
    }
}

fn successors(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new(); n];
    for (a, &(u, v)) in arcs.iter().enumerate() {
        out[u].push((v, a));
    }
    out
}

/// Lightest walk on `k` vertices repeating no vertex more than `r` times,
/// with the vertex sequence, found by depth-first search over all walks.
pub fn oracle_r_simple_k_path(
    g: &WeightedDigraph,
    r: u32,
    k: usize,
    budget: Budget,
) -> Result<Option<(i64, Vec<usize>)>> {
    walk_search(g, r, k, budget, false)
}

/// As [`oracle_r_simple_k_path`] but scoring walks by the sum of their arc weights.
pub fn oracle_edge_weighted_path(
    g: &WeightedDigraph,
    r: u32,
    k: usize,
    budget: Budget,
) -> Result<Option<(i64, Vec<usize>)>> {
    if g.arc_weights().is_none() {
        return Err(param("arc weights required"));
    }
    walk_search(g, r, k, budget, true)
}

fn walk_search(
    g: &WeightedDigraph,
    r: u32,
    k: usize,
    budget: Budget,
    by_arcs: bool,
) -> Result<Option<(i64, Vec<usize>)>> {
    if k == 0 || r == 0 {
        return Err(param("k and r must be at least 1"));
    }
    struct Search<'a> {
        succ: Vec<Vec<(usize, usize)>>,
        vw: &'a [i64],
        aw: Option<&'a [i64]>,
        r: u32,
        k: usize,
        count: Vec<u32>,
        walk: Vec<usize>,
        best: Option<(i64, Vec<usize>)>,
        meter: Meter,
    }
    impl Search<'_> {
        fn go(&mut self, v: usize, w: i64) -> Result<()> {
            self.meter.tick()?;
            if self.walk.len() == self.k {
                if self.best.as_ref().is_none_or(|(b, _)| w < *b) {
                    self.best = Some((w, self.walk.clone()));
                }
                return Ok(());
            }
            for i in 0..self.succ[v].len() {
                let (u, a) = self.succ[v][i];
                if self.count[u] == self.r {
                    continue;
                }
                let step = match self.aw {
                    Some(aw) => aw[a],
                    None => self.vw[u],
                };
                self.count[u] += 1;
                self.walk.push(u);
                self.go(u, w + step)?;
                self.walk.pop();
                self.count[u] -= 1;
            }
            Ok(())
        }
    }
    let mut s = Search {
        succ: successors(g.n(), g.arcs()),
        vw: g.vertex_weights(),
        aw: if by_arcs { g.arc_weights() } else { None },
        r,
        k,
        count: vec![0; g.n()],
        walk: Vec::with_capacity(k),
        best: None,
        meter: Meter::new("walk enumeration", budget),
    };
    for v in 0..g.n() {
        s.count[v] = 1;
        s.walk.push(v);
        let w = if by_arcs { 0 } else { g.vertex_weights()[v] };
        s.go(v, w)?;
        s.walk.pop();
        s.count[v] = 0;
    }
    Ok(s.best)
}

/// Second walk oracle: memoized recursion on (end vertex, visit counts, length).
pub fn oracle_r_simple_k_path_memo(g: &WeightedDigraph, r: u32, k: usize) -> Result<Option<i64>> {
    if k == 0 || r == 0 {
        return Err(param("k and r must be at least 1"));
    }
    // best(v, counts): lightest continuation adding `k - len` vertices after v.
    fn best(
        v: usize,
        counts: &mut Vec<u32>,
        left: usize,
        succ: &[Vec<(usize, usize)>],
        w: &[i64],
        r: u32,
        memo: &mut HashMap<(usize, Vec<u32>), Option<i64>>,
    ) -> Option<i64> {
        if left == 0 {
            return Some(0);
        }
        if let Some(&m) = memo.get(&(v, counts.clone())) {
            return m;
        }
        let mut out: Option<i64> = None;
        for &(u, _) in &succ[v] {
            if counts[u] < r {
                counts[u] += 1;
                if let Some(rest) = best(u, counts, left - 1, succ, w, r, memo) {
                    let total = w[u] + rest;
                    out = Some(out.map_or(total, |o| o.min(total)));
                }
                counts[u] -= 1;
            }
        }
        memo.insert((v, counts.clone()), out);
        out
    }
    let succ = successors(g.n(), g.arcs());
    let w = g.vertex_weights();
    let mut memo = HashMap::new();
    let mut answer: Option<i64> = None;
    for v in 0..g.n() {
        let mut counts = vec![0; g.n()];
        counts[v] = 1;
        if let Some(rest) = best(v, &mut counts, k - 1, &succ, w, r, &mut memo) {
            let total = w[v] + rest;
            answer = Some(answer.map_or(total, |a| a.min(total)));
        }
    }
    Ok(answer)
}

/// Lightest choice of `p` distinct sets covering no element more than `r`
/// times, by enumerating every `p`-subfamily. Set weights take precedence
/// over element weights when present.
pub fn oracle_packing(
    inst: &SetFamilyInstance,
    budget: Budget,
) -> Result<Option<(i64, Vec<usize>)>> {
    let sets = inst.sets();
    let n = inst.universe().n();
    let weight = |j: usize| -> i64 {
        match inst.set_weights() {
            Some(sw) => sw[j],
            None => sets[j].iter().map(|&x| inst.universe().weights()[x]).sum(),
        }
    };
    let mut meter = Meter::new("subfamily enumeration", budget);
    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut chosen = Vec::with_capacity(inst.p);
    let mut count = vec![0u32; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        start: usize,
        inst: &SetFamilyInstance,
        weight: &dyn Fn(usize) -> i64,
        chosen: &mut Vec<usize>,
        count: &mut Vec<u32>,
        w: i64,
        best: &mut Option<(i64, Vec<usize>)>,
        meter: &mut Meter,
    ) -> Result<()> {
        meter.tick()?;
        if chosen.len() == inst.p {
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                *best = Some((w, chosen.clone()));
            }
            return Ok(());
        }
        for j in start..inst.sets().len() {
            let s = &inst.sets()[j];
            for &x in s {
                count[x] += 1;
            }
            if s.iter().all(|&x| count[x] <= inst.r) {
                chosen.push(j);
                go(
                    j + 1,
                    inst,
                    weight,
                    chosen,
                    count,
                    w + weight(j),
                    best,
                    meter,
                )?;
                chosen.pop();
            }
            for &x in s {
                count[x] -= 1;
            }
        }
        Ok(())
    }
    if inst.p == 0 {
        return Err(param("p must be at least 1"));
    }
    go(
        0,
        inst,
        &weight,
        &mut chosen,
        &mut count,
        0,
        &mut best,
        &mut meter,
    )?;
    Ok(best)
}

/// A spanning tree as edge indices into the graph, with its degree vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub edges: Vec<usize>,
    pub degrees: Vec<u32>,
}

/// Every spanning tree, by testing each `(n-1)`-subset of edges for acyclicity.
pub fn oracle_spanning_trees(g: &UndirectedGraph, budget: Budget) -> Result<Vec<SpanningTree>> {
    let n = g.n();
    if n == 0 {
        return Err(param("the graph needs at least one vertex"));
    }
    let m = g.edges().len();
    let need = n - 1;
    let mut meter = Meter::new("edge subset enumeration", budget);
    let mut out = Vec::new();
    if need > m {
        return Ok(out);
    }
    // Index tuples in lexicographic order.
    let mut idx: Vec<usize> = (0..need).collect();
    loop {
        meter.tick()?;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut acyclic = true;
        for &e in &idx {
            let (u, v) = g.edges()[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                acyclic = false;
                break;
            }
            parent[a] = b;
        }
        if acyclic {
            let mut degrees = vec![0u32; n];
            for &e in &idx {
                let (u, v) = g.edges()[e];
                degrees[u] += 1;
                degrees[v] += 1;
            }
            out.push(SpanningTree {
                edges: idx.clone(),
                degrees,
            });
        }
        // Advance to the next combination.
        let mut i = need;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] < m - need + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..need {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sum over spanning trees of the product of their edge variables.
pub fn oracle_tree_polynomial(g: &UndirectedGraph, budget: Budget) -> Result<TruncatedPolynomial> {
    let m = g.edges().len();
    let mut out = TruncatedPolynomial::zero(m, Caps::NONE);
    for t in oracle_spanning_trees(g, budget)? {
        let mut exps = vec![0; m];
        for e in t.edges {
            exps[e] = 1;
        }
        out = &out + &TruncatedPolynomial::monomial(m, Caps::NONE, exps, 1);
    }
    Ok(out)
}

/// Whether some spanning tree has maximum degree at most `d`.
pub fn oracle_degree_bounded_tree(g: &UndirectedGraph, d: u32, budget: Budget) -> Result<bool> {
    Ok(oracle_spanning_trees(g, budget)?
        .iter()
        .any(|t| t.degrees.iter().all(|&x| x <= d)))
}

/// Held-Karp over vertex subsets.
pub fn oracle_hamiltonian_path(g: &UndirectedGraph) -> Result<bool> {
    let n = g.n();
    if n > 20 {
        return Err(Error::Budget {
            what: "Hamiltonian path subsets".to_string(),
            needed: 1u128 << n,
            limit: 1 << 20,
        });
    }
    if n <= 1 {
        return Ok(true);
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    // reach[S]: bitmask of vertices that can end a path visiting exactly S.
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; full + 1];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for s in 1..=full {
        let ends = reach[s];
        if ends == 0 {
            continue;
        }
        for (v, &nbrs) in adj.iter().enumerate() {
            if ends & (1 << v) == 0 {
                continue;
            }
            let mut next = nbrs & !(s as u32);
            while next != 0 {
                let u = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[s | (1 << u)] |= 1 << u;
            }
        }
    }
    Ok(reach[full] != 0)
}

/// Lightest (r,k)-monomial of the fully expanded circuit polynomial, ties
/// broken towards the lexicographically smallest exponent vector.
pub fn oracle_monomial(
    c: &ArithmeticCircuit,
    r: u32,
    k: u32,
    weights: Option<&[i64]>,
    max_terms: usize,
) -> Result<Option<(i64, Vec<u32>)>> {
    let nvars = weights.map_or(c.num_variables(), |w| w.len().max(c.num_variables()));
    let full = c.symbolic_expand(nvars, Caps::NONE, max_terms)?;
    let mut best: Option<(i64, Vec<u32>)> = None;
    for (e, coef) in full.terms() {
        if coef == &BigInt::from(0) || e.iter().sum::<u32>() != k || e.iter().any(|&x| x > r) {
            continue;
        }
        let w: i64 = e
            .iter()
            .enumerate()
            .map(|(i, &d)| i64::from(d) * weights.map_or(1, |w| w[i]))
            .sum();
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, e.clone()));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::WeightedUniverse;

    #[test]
    fn walk_examples() {
        let g = WeightedDigraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let b = Budget::default();
        assert_eq!(
            oracle_r_simple_k_path(&g, 2, 4, b).unwrap().map(|x| x.0),
            Some(4)
        );
        assert_eq!(oracle_r_simple_k_path_memo(&g, 2, 4).unwrap(), Some(4));
        assert_eq!(oracle_r_simple_k_path(&g, 2, 5, b).unwrap(), None);
        let lone = WeightedDigraph::new(1, vec![]).unwrap();
        assert_eq!(oracle_r_simple_k_path(&lone, 1, 2, b).unwrap(), None);
        let k3 =
            WeightedDigraph::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)]).unwrap();
        assert!(oracle_r_simple_k_path(&k3, 20, 40, Budget(100)).is_err());
    }

    #[test]
    fn packing_examples() {
        let inst = |r, p| {
            SetFamilyInstance::new(
                WeightedUniverse::uniform(3, 1),
                vec![vec![0, 1], vec![0, 2], vec![1, 2]],
                None,
                2,
                r,
                p,
            )
            .unwrap()
        };
        let b = Budget::default();
        assert_eq!(
            oracle_packing(&inst(2, 3), b).unwrap(),
            Some((6, vec![0, 1, 2]))
        );
        assert_eq!(oracle_packing(&inst(1, 2), b).unwrap(), None);
    }

    #[test]
    fn tree_examples() {
        let b = Budget::default();
        let tri = UndirectedGraph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(oracle_spanning_trees(&tri, b).unwrap().len(), 3);
        let path = UndirectedGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            oracle_spanning_trees(&path, b).unwrap()[0].edges,
            vec![0, 1]
        );
        let split = UndirectedGraph::new(3, vec![(0, 1)]).unwrap();
        assert!(oracle_spanning_trees(&split, b).unwrap().is_empty());
        let one = UndirectedGraph::new(1, vec![]).unwrap();
        assert_eq!(oracle_spanning_trees(&one, b).unwrap().len(), 1);
    }

    #[test]
    fn hamiltonian_examples() {
        let path = UndirectedGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(oracle_hamiltonian_path(&path).unwrap());
        let star = UndirectedGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!oracle_hamiltonian_path(&star).unwrap());
    }
}
