//! Spanning trees through Kirchhoff's theorem: the symbolic Laplacian, its
//! cofactors, degree-bounded spanning tree detection in a truncated ring,
//! and the pendant-vertex gadget relating bounded degree to Hamiltonicity.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{dim, param, Result};
use crate::graph::UndirectedGraph;
use crate::poly::{Caps, TruncatedPolynomial};

/// Laplacian over one variable per edge, `y_e` for edge index `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicLaplacian {
    entries: Vec<Vec<TruncatedPolynomial>>,
    nvars: usize,
}

impl SymbolicLaplacian {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Number of edge variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedPolynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<TruncatedPolynomial>] {
        &self.entries
    }

    /// Determinant of the matrix with row and column `i` deleted.
    pub fn cofactor(&self, i: usize) -> Result<TruncatedPolynomial> {
        if i >= self.n() {
            return Err(dim(format!(
                "cofactor index {} outside 1..={}",
                i + 1,
                self.n()
            )));
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&j| j != i).collect();
        determinant(&self.entries, &keep, self.nvars, Caps::NONE)
    }

    /// The matrix at an integer point of the edge variables.
    pub fn evaluate(&self, point: &[BigInt]) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }
}

pub fn build_laplacian(g: &UndirectedGraph) -> SymbolicLaplacian {
    let m = g.edges().len();
    let zero = TruncatedPolynomial::zero(m, Caps::NONE);
    let mut entries = vec![vec![zero; g.n()]; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let y = TruncatedPolynomial::variable(m, Caps::NONE, e);
        entries[u][u] = &entries[u][u] + &y;
        entries[v][v] = &entries[v][v] + &y;
        entries[u][v] = &entries[u][v] - &y;
        entries[v][u] = &entries[v][u] - &y;
    }
    SymbolicLaplacian { entries, nvars: m }
}

/// The spanning-tree generating polynomial, computed as the first cofactor.
pub fn kirchhoff_polynomial(g: &UndirectedGraph) -> Result<TruncatedPolynomial> {
    if g.n() == 0 {
        return Err(param("the graph needs at least one vertex"));
    }
    build_laplacian(g).cofactor(0)
}

/// Determinant of the principal submatrix on `idx`, by expansion along rows
/// with one memo entry per column subset. Division-free, so it is valid in
/// truncated rings with zero divisors.
fn determinant(
    m: &[Vec<TruncatedPolynomial>],
    idx: &[usize],
    nvars: usize,
    caps: Caps,
) -> Result<TruncatedPolynomial> {
    let size = idx.len();
    if size >= 26 {
        return Err(param("determinant dimension too large"));
    }
    Budget::default().check("cofactor expansion", (1u128 << size) * size.max(1) as u128)?;
    // memo[S]: determinant of the last |S| rows of `idx` restricted to columns S.
    let full = (1usize << size) - 1;
    let mut memo: Vec<Option<TruncatedPolynomial>> = vec![None; full + 1];
    memo[0] = Some(TruncatedPolynomial::one(nvars, caps));
    let mut by_size: Vec<usize> = (1..=full).collect();
    by_size.sort_by_key(|s| s.count_ones());
    for s in by_size {
        let row = idx[size - s.count_ones() as usize];
        let mut acc = TruncatedPolynomial::zero(nvars, caps);
        let mut before = 0;
        for (j, &col) in idx.iter().enumerate() {
            if s & (1 << j) == 0 {
                continue;
            }
            let entry = m[row][col].truncate(caps);
            if !entry.is_zero() {
                let minor = memo[s & !(1 << j)].as_ref().expect("smaller subsets first");
                if !minor.is_zero() {
                    let term = &entry * minor;
                    acc = if before % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
            }
            before += 1;
        }
        memo[s] = Some(acc);
    }
    Ok(memo[full].take().expect("computed"))
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn integer_determinant(mut a: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(dim("matrix is not square"));
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    })
}

/// The Kirchhoff polynomial with `y_uv = x_u x_v`, over vertex variables,
/// reduced modulo individual degree `> d` and total degree `> 2(n-1)`.
///
/// Each surviving monomial is the degree vector of a spanning tree of
/// maximum degree at most `d`.
pub fn degree_polynomial(g: &UndirectedGraph, d: u32) -> Result<TruncatedPolynomial> {
    let n = g.n();
    if n == 0 {
        return Err(param("the graph needs at least one vertex"));
    }
    let caps = Caps::new(d, 2 * (n as u32 - 1));
    let zero = TruncatedPolynomial::zero(n, caps);
    let mut entries = vec![vec![zero; n]; n];
    for &(u, v) in g.edges() {
        let mut exps = vec![0; n];
        exps[u] = 1;
        exps[v] = 1;
        let y = TruncatedPolynomial::monomial(n, caps, exps, 1);
        entries[u][u] = &entries[u][u] + &y;
        entries[v][v] = &entries[v][v] + &y;
        entries[u][v] = &entries[u][v] - &y;
        entries[v][u] = &entries[v][u] - &y;
    }
    let keep: Vec<usize> = (1..n).collect();
    determinant(&entries, &keep, n, caps)
}

/// Whether `g` has a spanning tree with maximum degree at most `d`.
pub fn has_degree_bounded_spanning_tree(g: &UndirectedGraph, d: u32) -> Result<bool> {
    let top = 2 * (g.n().max(1) as u32 - 1);
    Ok(degree_polynomial(g, d)?
        .homogeneous_part(top)
        .next()
        .is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DbstResult {
    pub found: bool,
    /// Tree edges (0-based endpoints), empty when not found.
    pub tree: Vec<(usize, usize)>,
    /// Vertex degrees in the witness tree.
    pub degrees: Vec<u32>,
}

/// Decides degree-bounded spanning tree and recovers a witness by deleting
/// every edge whose removal keeps the answer positive.
pub fn solve_degree_bounded_spanning_tree(g: &UndirectedGraph, d: u32) -> Result<DbstResult> {
    if !has_degree_bounded_spanning_tree(g, d)? {
        return Ok(DbstResult {
            found: false,
            tree: Vec::new(),
            degrees: Vec::new(),
        });
    }
    let mut h = g.clone();
    let mut i = 0;
    while i < h.edges().len() {
        let probe = h.without_edge(i);
        if has_degree_bounded_spanning_tree(&probe, d)? {
            h = probe;
        } else {
            i += 1;
        }
    }
    let degrees = (0..h.n()).map(|v| h.degree(v) as u32).collect();
    Ok(DbstResult {
        found: true,
        tree: h.edges().to_vec(),
        degrees,
    })
}

/// Attaches `d - 2` pendant vertices to every vertex. The result has a
/// spanning tree of maximum degree at most `d` iff `g` has a Hamiltonian path.
pub fn hardness_gadget(g: &UndirectedGraph, d: u32) -> Result<UndirectedGraph> {
    if d < 2 {
        return Err(param("the gadget needs d >= 2"));
    }
    let n = g.n();
    let extra = (d - 2) as usize;
    let mut edges = g.edges().to_vec();
    for v in 0..n {
        for j in 0..extra {
            edges.push((v, n + v * extra + j));
        }
    }
    UndirectedGraph::new(n * (extra + 1), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
        UndirectedGraph::new(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        let l = build_laplacian(&graph(2, &[(0, 1)]));
        assert_eq!(l.entry(0, 0).to_string(), "x1");
        assert_eq!(l.entry(0, 1).to_string(), "-x1");
        let l = build_laplacian(&graph(3, &[]));
        assert!(l.rows().iter().flatten().all(|p| p.is_zero()));
    }

    #[test]
    fn triangle_polynomial() {
        let k = kirchhoff_polynomial(&graph(3, &[(0, 1), (0, 2), (1, 2)])).unwrap();
        assert_eq!(k.len(), 3);
        assert_eq!(k.to_string(), "x2*x3 + x1*x3 + x1*x2");
        assert!(kirchhoff_polynomial(&graph(3, &[(0, 1)]))
            .unwrap()
            .is_zero());
        assert!(
            kirchhoff_polynomial(&graph(1, &[])).unwrap()
                == TruncatedPolynomial::one(0, Caps::NONE)
        );
    }

    #[test]
    fn complete_graph_count() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let ones = vec![BigInt::one(); 6];
        assert_eq!(
            kirchhoff_polynomial(&k4).unwrap().evaluate(&ones),
            BigInt::from(16)
        );
        let l = build_laplacian(&k4);
        let minor: Vec<Vec<BigInt>> = l.evaluate(&ones)[1..]
            .iter()
            .map(|r| r[1..].to_vec())
            .collect();
        assert_eq!(integer_determinant(minor).unwrap(), BigInt::from(16));
    }

    #[test]
    fn bounded_degree_examples() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        let res = solve_degree_bounded_spanning_tree(&path, 2).unwrap();
        assert!(res.found);
        assert_eq!(res.tree, vec![(0, 1), (1, 2)]);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!solve_degree_bounded_spanning_tree(&star, 2).unwrap().found);
        let res = solve_degree_bounded_spanning_tree(&star, 3).unwrap();
        assert_eq!(res.degrees, vec![3, 1, 1, 1]);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let res = solve_degree_bounded_spanning_tree(&k4, 2).unwrap();
        assert_eq!(res.tree.len(), 3);
        assert!(res.degrees.iter().all(|&x| x <= 2));
    }

    #[test]
    fn gadget_shape() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let g = hardness_gadget(&p3, 3).unwrap();
        assert_eq!(g.n(), 6);
        assert!(solve_degree_bounded_spanning_tree(&g, 3).unwrap().found);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!has_degree_bounded_spanning_tree(&hardness_gadget(&star, 3).unwrap(), 3).unwrap());
        assert_eq!(hardness_gadget(&p3, 2).unwrap(), p3);
        assert!(hardness_gadget(&p3, 1).is_err());
    }
}
