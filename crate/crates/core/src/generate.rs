//! Seeded random instances and exhaustive graph catalogs for tests, examples
//! and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{ArithmeticCircuit, Gate, GateKind};
use crate::error::Result;
use crate::graph::{UndirectedGraph, WeightedDigraph};
use crate::multiset::{MultisetVector, WeightedUniverse};
use crate::repset::WeightedMultisetFamily;
use crate::solvers::SetFamilyInstance;

/// Digraph with each ordered pair `(u, v)`, loops excluded, present with
/// probability `density`; weights drawn from `weights` (inclusive).
pub fn random_digraph<R: Rng>(
    rng: &mut R,
    n: usize,
    density: f64,
    weights: (i64, i64),
    arc_weights: bool,
) -> WeightedDigraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                arcs.push((u, v));
            }
        }
    }
    let vw = (0..n)
        .map(|_| rng.gen_range(weights.0..=weights.1))
        .collect();
    let aw = arc_weights.then(|| {
        arcs.iter()
            .map(|_| rng.gen_range(weights.0..=weights.1))
            .collect()
    });
    WeightedDigraph::with_weights(n, arcs, vw, aw).expect("generated arcs are in range")
}

/// `count` random `q`-subsets of `[n]` (repeats allowed), element weights
/// from `weights`, and optionally independent set weights.
pub fn random_set_family<R: Rng>(
    rng: &mut R,
    n: usize,
    count: usize,
    q: usize,
    weights: (i64, i64),
    set_weights: bool,
) -> SetFamilyInstance {
    let all: Vec<usize> = (0..n).collect();
    let sets = (0..count)
        .map(|_| all.choose_multiple(rng, q.min(n)).copied().collect())
        .collect();
    let uw = (0..n)
        .map(|_| rng.gen_range(weights.0..=weights.1))
        .collect();
    let sw = set_weights.then(|| {
        (0..count)
            .map(|_| rng.gen_range(weights.0..=weights.1))
            .collect()
    });
    SetFamilyInstance::new(WeightedUniverse::new(uw), sets, sw, q.min(n), 1, 1)
        .expect("generated sets are valid")
}

/// Up to `size` random r-k-sets over `[n]` with random weights. Element
/// weights are drawn first and member weights are their sums.
pub fn random_weighted_family<R: Rng>(
    rng: &mut R,
    n: usize,
    r: u32,
    k: u32,
    size: usize,
    weights: (i64, i64),
) -> Result<WeightedMultisetFamily> {
    let uw = (0..n)
        .map(|_| rng.gen_range(weights.0..=weights.1))
        .collect();
    let mut fam = WeightedMultisetFamily::new(WeightedUniverse::new(uw), r, k)?;
    for _ in 0..size {
        let target = rng.gen_range(0..=k);
        let mut counts = vec![0u32; n];
        let mut total = 0;
        let mut tries = 0;
        while total < target && tries < 8 * (k as usize + 1) {
            let i = rng.gen_range(0..n);
            if counts[i] < r {
                counts[i] += 1;
                total += 1;
            }
            tries += 1;
        }
        fam.push(MultisetVector::new(r, &counts)?)?;
    }
    Ok(fam)
}

/// Random non-canceling circuit over `n` variables with at most `max_gates`
/// gates. Gates that do not feed the last gate are dropped.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, max_gates: usize) -> ArithmeticCircuit {
    let max_gates = max_gates.max(1);
    let mut kinds: Vec<GateKind> = Vec::with_capacity(max_gates);
    for pos in 0..max_gates {
        let leaf = pos == 0 || rng.gen_bool(0.3);
        kinds.push(if leaf {
            GateKind::Var(rng.gen_range(0..n.max(1)))
        } else {
            // Prefer recent gates so that most of the circuit stays connected.
            let lo = pos.saturating_sub(4);
            let a = rng.gen_range(lo..pos);
            let b = rng.gen_range(0..pos);
            if rng.gen_bool(0.5) {
                GateKind::Add(a, b)
            } else {
                GateKind::Mul(a, b)
            }
        });
    }
    let mut live = vec![false; kinds.len()];
    live[kinds.len() - 1] = true;
    for pos in (0..kinds.len()).rev() {
        if live[pos] {
            if let GateKind::Add(a, b) | GateKind::Mul(a, b) = kinds[pos] {
                live[a] = true;
                live[b] = true;
            }
        }
    }
    let mut new_pos = vec![usize::MAX; kinds.len()];
    let mut gates = Vec::new();
    for (pos, kind) in kinds.into_iter().enumerate() {
        if !live[pos] {
            continue;
        }
        let kind = match kind {
            GateKind::Var(i) => GateKind::Var(i),
            GateKind::Add(a, b) => GateKind::Add(new_pos[a], new_pos[b]),
            GateKind::Mul(a, b) => GateKind::Mul(new_pos[a], new_pos[b]),
        };
        new_pos[pos] = gates.len();
        gates.push(Gate {
            id: gates.len() as u64 + 1,
            kind,
        });
    }
    let output = gates.len() - 1;
    ArithmeticCircuit::new(gates, output).expect("generated circuits are valid")
}

/// Every labeled simple graph on `n` vertices, in order of edge mask.
pub fn all_graphs(n: usize) -> Vec<UndirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "catalog too large");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            UndirectedGraph::new(n, edges).expect("distinct pairs")
        })
        .collect()
}

/// One representative per isomorphism class of graphs on `n` vertices: the
/// labeled graph whose edge mask is smallest within its class.
pub fn nonisomorphic_graphs(n: usize) -> Vec<UndirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permutations(&mut p, 0, &mut perms);
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canonical = perms.iter().all(|perm| {
            let mut image = 0u32;
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    image |= 1 << index[perm[u]][perm[v]];
                }
            }
            image >= mask
        });
        if canonical {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            out.push(UndirectedGraph::new(n, edges).expect("distinct pairs"));
        }
    }
    out
}

fn permutations(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    if i == p.len() {
        out.push(p.clone());
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, out);
        p.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalog_counts() {
        assert_eq!(all_graphs(4).len(), 64);
        let counts: Vec<usize> = (1..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_circuit(&mut ChaCha8Rng::seed_from_u64(3), 3, 10);
        let b = random_circuit(&mut ChaCha8Rng::seed_from_u64(3), 3, 10);
        assert_eq!(a, b);
        assert!(a.size() <= 10);
        let g = random_digraph(&mut ChaCha8Rng::seed_from_u64(1), 5, 0.4, (-2, 3), true);
        assert_eq!(g.arc_weights().unwrap().len(), g.arcs().len());
        let s = random_set_family(&mut ChaCha8Rng::seed_from_u64(1), 6, 5, 3, (1, 4), false);
        assert!(s.sets().iter().all(|x| x.len() == 3));
    }
}
