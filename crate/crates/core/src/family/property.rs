//! Exhaustive checkers for the defining property of each family kind.

use super::perfect::injective_on;
use super::FunctionFamily;
use crate::budget::{binomial, Budget};
use crate::combinatorics::{combinations, subsets_up_to};
use crate::error::{param, Result};
use crate::verify::{Counterexample, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyProperty {
    /// Every `t`-subset of the domain is mapped injectively by some member.
    PerfectHash { t: usize },
    /// For all `x != y` and values `a, b`: `|Pr[f(x)=a, f(y)=b] - 1/s^2| <= eps`.
    Pairwise { eps: f64 },
    /// For every `a` and `D` with `|D| <= max_others`, `a` not in `D`, at least
    /// half the members keep `f(a)` out of `f(D)`.
    OneVsMany { max_others: usize },
}

pub fn verify_family(
    fam: &FunctionFamily,
    property: &FamilyProperty,
    budget: Budget,
) -> Result<Verdict> {
    let n = fam.domain_size();
    let members = fam.len().max(1) as u128;
    match *property {
        FamilyProperty::PerfectHash { t } => {
            if t > n {
                return Err(param(format!("t={t} exceeds the domain size {n}")));
            }
            budget.check(
                "perfect-hash verification",
                binomial(n as u64, t as u64).saturating_mul(members),
            )?;
            for c in combinations(n, t) {
                if !fam.tables().iter().any(|f| injective_on(f, &c)) {
                    return Ok(Verdict::Violated(Counterexample::Subset(c)));
                }
            }
            Ok(Verdict::Holds)
        }
        FamilyProperty::Pairwise { eps } => {
            let s = fam.range_size();
            budget.check(
                "pairwise-independence verification",
                binomial(n as u64, 2)
                    .saturating_mul(members)
                    .saturating_add((n * n * s * s) as u128),
            )?;
            let target = 1.0 / (s as f64 * s as f64);
            let total = fam.len() as f64;
            let mut counts = vec![0u64; s * s];
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    counts.iter_mut().for_each(|c| *c = 0);
                    for f in fam.tables() {
                        counts[(f[x] as usize - 1) * s + f[y] as usize - 1] += 1;
                    }
                    for (idx, &c) in counts.iter().enumerate() {
                        if (c as f64 / total - target).abs() > eps + 1e-12 {
                            return Ok(Verdict::Violated(Counterexample::Pairwise {
                                x,
                                y,
                                a: idx / s,
                                b: idx % s,
                            }));
                        }
                    }
                }
            }
            Ok(Verdict::Holds)
        }
        FamilyProperty::OneVsMany { max_others } => {
            let cap = max_others.min(n.saturating_sub(1));
            let sets: u128 = (0..=cap).map(|j| binomial(n as u64 - 1, j as u64)).sum();
            budget.check(
                "one-vs-many verification",
                sets.saturating_mul(n as u128).saturating_mul(members),
            )?;
            for a in 0..n {
                let pool: Vec<usize> = (0..n).filter(|&x| x != a).collect();
                for others in subsets_up_to(&pool, cap) {
                    let good = fam
                        .tables()
                        .iter()
                        .filter(|f| others.iter().all(|&b| f[b] != f[a]))
                        .count();
                    if 2 * good < fam.len() {
                        return Ok(Verdict::Violated(Counterexample::OneVsMany { a, others }));
                    }
                }
            }
            Ok(Verdict::Holds)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Provenance;

    #[test]
    fn detects_missing_pair() {
        let fam = FunctionFamily::new(3, 2, vec![vec![1, 2, 2]], Provenance::Explicit).unwrap();
        let v = verify_family(
            &fam,
            &FamilyProperty::PerfectHash { t: 2 },
            Budget::default(),
        )
        .unwrap();
        assert_eq!(v, Verdict::Violated(Counterexample::Subset(vec![1, 2])));
    }

    #[test]
    fn constant_family_is_not_pairwise() {
        let fam = FunctionFamily::constant(3, 2);
        let v = verify_family(
            &fam,
            &FamilyProperty::Pairwise { eps: 0.1 },
            Budget::default(),
        )
        .unwrap();
        assert!(!v.holds());
    }

    #[test]
    fn one_vs_many_counterexample() {
        let fam = FunctionFamily::new(
            3,
            2,
            vec![vec![1, 1, 2], vec![1, 2, 1]],
            Provenance::Explicit,
        )
        .unwrap();
        let v = verify_family(
            &fam,
            &FamilyProperty::OneVsMany { max_others: 2 },
            Budget::default(),
        )
        .unwrap();
        assert_eq!(
            v,
            Verdict::Violated(Counterexample::OneVsMany {
                a: 0,
                others: vec![1, 2]
            })
        );
    }

    #[test]
    fn budget_is_enforced() {
        let fam = FunctionFamily::identity(30, 30);
        assert!(verify_family(&fam, &FamilyProperty::PerfectHash { t: 15 }, Budget(1000)).is_err());
    }
}
