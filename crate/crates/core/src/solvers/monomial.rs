//! (r,k)-monomial detection on non-canceling circuits: does the circuit's
//! polynomial contain a monomial of total degree `k` with every exponent at most `r`?

use serde::Serialize;

use super::{Candidates, Cell};
use crate::circuit::{ArithmeticCircuit, GateKind};
use crate::error::{dim, param, Result};
use crate::multiset::{MultisetVector, WeightedUniverse};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialResult {
    pub found: bool,
    /// Exponent vector of the witness monomial, empty when not found.
    pub monomial: Vec<u32>,
    pub weight: Option<i64>,
    /// Entries kept at each gate after trimming, in gate order.
    pub family_sizes: Vec<usize>,
}

/// Each gate holds a representative family of the (r,k)-monomials of its
/// polynomial; without cancellation, a monomial is present iff some
/// derivation through the gates produces it.
///
/// `weights` gives a weight per variable (default 1); the witness is a
/// lightest degree-`k` monomial.
pub fn solve_monomial_detection(
    c: &ArithmeticCircuit,
    r: u32,
    k: u32,
    weights: Option<&[i64]>,
) -> Result<MonomialResult> {
    if r == 0 || k == 0 {
        return Err(param("r and k must be at least 1"));
    }
    let n = c.num_variables();
    let universe = match weights {
        Some(w) if w.len() < n => {
            return Err(dim(format!(
                "circuit uses {n} variables, {} weights given",
                w.len()
            )));
        }
        Some(w) => WeightedUniverse::new(w.to_vec()),
        None => WeightedUniverse::uniform(n, 1),
    };
    let n = universe.n();
    let mut cells: Vec<Option<Cell<()>>> = Vec::with_capacity(c.size());
    let mut family_sizes = Vec::with_capacity(c.size());
    for g in c.gates() {
        let mut cand = Candidates::new();
        match g.kind {
            GateKind::Var(i) => {
                cand.offer(
                    MultisetVector::indicator(n, r, &[i])?,
                    universe.weight_of(i),
                    (),
                );
            }
            GateKind::Add(a, b) => {
                for child in [a, b] {
                    for e in cells[child]
                        .as_ref()
                        .expect("children precede parents")
                        .family
                        .entries()
                    {
                        cand.offer(e.set.clone(), e.weight, ());
                    }
                }
            }
            GateKind::Mul(a, b) => {
                let fa = &cells[a].as_ref().expect("children precede parents").family;
                let fb = &cells[b].as_ref().expect("children precede parents").family;
                for x in fa.entries() {
                    for y in fb.entries() {
                        if let Some(sum) = x.set.add_consistent(&y.set, k) {
                            cand.offer(sum, x.weight + y.weight, ());
                        }
                    }
                }
            }
        }
        let cell = cand.into_representative(&universe, r, k)?;
        family_sizes.push(cell.family.len());
        cells.push(Some(cell));
    }
    let out = cells[c.output()].take().expect("output evaluated");
    let best = out
        .family
        .entries()
        .iter()
        .filter(|e| e.set.size() == k)
        .min_by_key(|e| e.weight);
    Ok(match best {
        Some(e) => MonomialResult {
            found: true,
            monomial: e.set.counts(),
            weight: Some(e.weight),
            family_sizes,
        },
        None => MonomialResult {
            found: false,
            monomial: Vec::new(),
            weight: None,
            family_sizes,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuit(text: &str) -> ArithmeticCircuit {
        text.parse().unwrap()
    }

    #[test]
    fn square_of_sum() {
        let c = circuit("g1 = var x1\ng2 = var x2\ng3 = add g1 g2\ng4 = mul g3 g3\noutput g4\n");
        let res = solve_monomial_detection(&c, 1, 2, None).unwrap();
        assert!(res.found);
        assert_eq!(res.monomial, vec![1, 1]);
        assert_eq!(res.weight, Some(2));
        let res = solve_monomial_detection(&c, 2, 2, Some(&[-5, 1])).unwrap();
        assert_eq!((res.monomial, res.weight), (vec![2, 0], Some(-10)));
        assert!(!solve_monomial_detection(&c, 1, 3, None).unwrap().found);
    }

    #[test]
    fn square_of_variable() {
        let c = circuit("g1 = var x1\ng2 = mul g1 g1\noutput g2\n");
        assert!(!solve_monomial_detection(&c, 1, 2, None).unwrap().found);
        let res = solve_monomial_detection(&c, 2, 2, None).unwrap();
        assert_eq!(res.monomial, vec![2]);
        assert!(solve_monomial_detection(&c, 0, 2, None).is_err());
    }
}
