//! Perfect hash families by greedy derandomization.
//!
//! Functions are added one at a time. Each new function is fixed element by
//! element, always picking the value that maximizes the conditional expected
//! number of still-uncovered `t`-subsets on which the finished function will
//! be injective (remaining values treated as uniform). Every round covers at
//! least one subset, so the loop terminates with a family that is `t`-perfect.

use super::{FunctionFamily, Provenance};
use crate::budget::binomial;
use crate::combinatorics::combinations;
use crate::error::{param, Error, Result};

/// Refuse greedy constructions with more constraint sets than this.
const CONSTRAINT_LIMIT: u128 = 2_000_000;

/// A `t`-perfect hash family `[n] -> [t^2]`.
pub fn build_perfect_hash(n: usize, t: usize) -> Result<FunctionFamily> {
    greedy_perfect_hash(n, t * t, t)
}

/// A `t`-perfect hash family `[k2] -> [t]`; each member is a bijection on the sets it covers.
pub fn build_perfect_hash_small_range(k2: usize, t: usize) -> Result<FunctionFamily> {
    greedy_perfect_hash(k2, t, t)
}

/// A family `[n] -> [m]` injective on every `t`-subset of `[n]` by at least one member.
pub fn greedy_perfect_hash(n: usize, m: usize, t: usize) -> Result<FunctionFamily> {
    if t == 0 || t > n {
        return Err(param(format!(
            "perfect hashing needs 1 <= t <= n, got t={t}, n={n}"
        )));
    }
    if m < t {
        return Err(param(format!("range {m} is smaller than t={t}")));
    }
    if m >= n {
        return Ok(FunctionFamily::identity(n, m));
    }
    if t == 1 {
        return Ok(FunctionFamily::constant(n, m));
    }
    let needed = binomial(n as u64, t as u64);
    if needed > CONSTRAINT_LIMIT {
        return Err(Error::Budget {
            what: format!("greedy {t}-perfect hashing over [{n}]"),
            needed,
            limit: CONSTRAINT_LIMIT as u64,
        });
    }

    let sets: Vec<Vec<usize>> = combinations(n, t).collect();
    let mut by_element: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, c) in sets.iter().enumerate() {
        for &x in c {
            by_element[x].push(ci);
        }
    }
    // survive[a][b]: probability that b uniform values avoid a fixed distinct
    // values and each other.
    let survive: Vec<Vec<f64>> = (0..=t)
        .map(|a| {
            (0..=t - a)
                .map(|b| (0..b).map(|j| (m - a - j) as f64 / m as f64).product())
                .collect()
        })
        .collect();

    let mut uncovered = vec![true; sets.len()];
    let mut remaining = sets.len();
    let mut tables = Vec::new();
    let words = m.div_ceil(64);

    while remaining > 0 {
        let mut values = vec![0u32; n];
        let mut used = vec![0u64; sets.len() * words];
        let mut assigned = vec![0usize; sets.len()];
        let mut alive = uncovered.clone();

        for x in 0..n {
            let mut best = (f64::NEG_INFINITY, 0usize);
            for v in 0..m {
                let mut score = 0.0;
                for &ci in &by_element[x] {
                    if !alive[ci] || used[ci * words + v / 64] >> (v % 64) & 1 == 1 {
                        continue;
                    }
                    let a = assigned[ci] + 1;
                    score += survive[a][t - a];
                }
                if score > best.0 + 1e-12 {
                    best = (score, v);
                }
            }
            let v = best.1;
            values[x] = v as u32 + 1;
            for &ci in &by_element[x] {
                if !alive[ci] {
                    continue;
                }
                let slot = &mut used[ci * words + v / 64];
                if *slot >> (v % 64) & 1 == 1 {
                    alive[ci] = false;
                } else {
                    *slot |= 1 << (v % 64);
                    assigned[ci] += 1;
                }
            }
        }

        let mut covered = 0;
        for (ci, c) in sets.iter().enumerate() {
            if uncovered[ci] && injective_on(&values, c) {
                uncovered[ci] = false;
                covered += 1;
            }
        }
        if covered == 0 {
            // Floating-point ties can in principle stall; force progress on
            // the first uncovered set.
            let ci = uncovered.iter().position(|&u| u).expect("remaining > 0");
            for (slot, &x) in sets[ci].iter().enumerate() {
                values[x] = slot as u32 + 1;
            }
            uncovered[ci] = false;
            covered = 1;
            for (cj, c) in sets.iter().enumerate() {
                if uncovered[cj] && injective_on(&values, c) {
                    uncovered[cj] = false;
                    covered += 1;
                }
            }
        }
        remaining -= covered;
        tables.push(values);
    }
    FunctionFamily::new(n, m, tables, Provenance::GreedyPerfectHash)
}

pub(crate) fn injective_on(values: &[u32], set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &x)| set[..i].iter().all(|&y| values[x] != values[y]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{verify_family, FamilyProperty};
    use crate::Budget;

    fn perfect(fam: &FunctionFamily, t: usize) -> bool {
        verify_family(fam, &FamilyProperty::PerfectHash { t }, Budget::default())
            .unwrap()
            .holds()
    }

    #[test]
    fn small_examples() {
        // All six pairs of [4] separated by the given 3-member family.
        let given = FunctionFamily::new(
            4,
            2,
            vec![vec![1, 2, 1, 2], vec![1, 1, 2, 2], vec![1, 2, 2, 1]],
            Provenance::Explicit,
        )
        .unwrap();
        assert!(perfect(&given, 2));

        let f = build_perfect_hash(4, 2).unwrap();
        assert!(perfect(&f, 2));
        let f = build_perfect_hash(1, 1).unwrap();
        assert_eq!(f.tables(), &[vec![1]]);
        let f = build_perfect_hash(5, 5).unwrap();
        assert_eq!(f.len(), 1);
        assert!(perfect(&f, 5));

        let f = build_perfect_hash_small_range(3, 1).unwrap();
        assert_eq!(f.tables(), &[vec![1, 1, 1]]);
        let f = build_perfect_hash_small_range(4, 2).unwrap();
        assert_eq!(f.range_size(), 2);
        assert!(perfect(&f, 2));
        let f = build_perfect_hash_small_range(2, 2).unwrap();
        assert_eq!(f.tables(), &[vec![1, 2]]);
    }

    #[test]
    fn parameter_errors() {
        assert!(build_perfect_hash(3, 4).is_err());
        assert!(build_perfect_hash_small_range(3, 0).is_err());
    }

    #[test]
    fn greedy_families_are_perfect() {
        for n in 1..=10 {
            for t in 1..=n.min(5) {
                let f = build_perfect_hash_small_range(n, t).unwrap();
                assert!(perfect(&f, t), "n={n} t={t}");
                assert!(f
                    .tables()
                    .iter()
                    .all(|row| row.iter().all(|&v| v as usize <= t)));
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = build_perfect_hash_small_range(9, 4).unwrap();
        let b = build_perfect_hash_small_range(9, 4).unwrap();
        assert_eq!(a, b);
    }
}
