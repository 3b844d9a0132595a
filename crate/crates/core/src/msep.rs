//! Multiset separators.
//!
//! An `(n,r,k)`-multiset separator is a family of r-sets `F` such that every
//! rk-compatible pair `(A, B)` has a member with `A <= F <= comp(B)`.
//! For `r >= 2` the members are `F^{h,w}` for `h` in a `(t,k)`-minimal
//! separating family with `t = floor(2k/r)` and `w` in `{0..r}^t`:
//! coordinate `i` takes `w_{h(i)}` when `h(i) <= t` and `floor(r/2)` otherwise.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::budget::{saturating_pow, Budget};
use crate::combinatorics::product;
use crate::error::{param, Error, Result};
use crate::family::{parse_header, parse_u32_row, syntax};
use crate::multiset::{all_vectors, MultisetVector};
use crate::separating::{build_lopsided_universal, build_minimal_separating, separating_witness};
use crate::verify::{Counterexample, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetSeparator {
    n: usize,
    r: u32,
    k: u32,
    t: usize,
    members: Vec<MultisetVector>,
    generated: u128,
    separating_size: usize,
}

impl MultisetSeparator {
    /// Wraps an explicit list of r-sets over `[n]`.
    pub fn new(n: usize, r: u32, k: u32, members: Vec<MultisetVector>) -> Result<Self> {
        if r == 0 || k == 0 {
            return Err(param("r and k must be positive"));
        }
        if let Some(m) = members.iter().find(|m| m.n() != n || m.cap() != r) {
            return Err(param(format!(
                "member ({m}) is not an r-set over n={n} with r={r}"
            )));
        }
        let generated = members.len() as u128;
        Ok(MultisetSeparator {
            n,
            r,
            k,
            t: 2 * k as usize / r as usize,
            members,
            generated,
            separating_size: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `floor(2k/r)`.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn members(&self) -> &[MultisetVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of vectors produced before deduplication.
    pub fn generated(&self) -> u128 {
        self.generated
    }

    /// Size of the separating family (or, for `r = 1`, the number of
    /// universal-set members) the separator was built from.
    pub fn separating_size(&self) -> usize {
        self.separating_size
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultisetSeparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "msep n={} r={} k={}", self.n, self.r, self.k)?;
        for m in &self.members {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MultisetSeparator {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
        let h = parse_header(header, "msep", &["n", "r", "k"], 1)?;
        let (n, r, k) = (h[0], h[1] as u32, h[2] as u32);
        let mut members = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row = parse_u32_row(line, idx + 1)?;
            if row.len() != n {
                return Err(syntax(
                    idx + 1,
                    1,
                    &format!("expected {n} counts, found {}", row.len()),
                )
                .into());
            }
            if let Some(pos) = row.iter().position(|&c| c > r) {
                return Err(syntax(idx + 1, pos + 1, "count exceeds r").into());
            }
            members.push(MultisetVector::new(r, &row)?);
        }
        MultisetSeparator::new(n, r, k, members)
    }
}

fn check_params(n: usize, r: u32, k: u32) -> Result<()> {
    if n == 0 {
        return Err(param("n must be at least 1"));
    }
    if r == 0 || k == 0 {
        return Err(param("r and k must be positive"));
    }
    if r > k {
        return Err(param(format!("need r <= k, got r={r}, k={k}")));
    }
    Ok(())
}

pub fn build_multiset_separator(n: usize, r: u32, k: u32) -> Result<MultisetSeparator> {
    check_params(n, r, k)?;
    if r == 1 {
        return build_indicator_separator(n, k);
    }
    let t = (2 * k / r) as usize;
    let universe = n.max(t);
    let h = build_minimal_separating(universe, t, k as usize)?;
    let ws = vec![r as usize + 1; t];
    let other = t as u32 + 1;
    let half = r / 2;
    let mut seen = BTreeSet::new();
    let mut generated: u128 = 0;
    for f in h.family().tables() {
        for w in product(&ws) {
            let counts: Vec<u32> = f[..n]
                .iter()
                .map(|&v| {
                    if v == other {
                        half
                    } else {
                        w[v as usize - 1] as u32
                    }
                })
                .collect();
            generated += 1;
            seen.insert(MultisetVector::new(r, &counts)?);
        }
    }
    Ok(MultisetSeparator {
        n,
        r,
        k,
        t,
        members: seen.into_iter().collect(),
        generated,
        separating_size: h.len(),
    })
}

/// For 0/1 vectors `A <= F <= comp(B)` says `A ⊆ F` and `F ∩ B = ∅`, so the
/// union of lopsided universal families over every split `|A| + |B| = k`
/// is a separator.
fn build_indicator_separator(n: usize, k: u32) -> Result<MultisetSeparator> {
    let k = k as usize;
    let mut seen = BTreeSet::new();
    let mut generated: u128 = 0;
    if k <= n {
        // p = 0: the empty set contains A = ∅ and avoids every B.
        seen.insert(MultisetVector::zeros(n, 1)?);
        generated += 1;
        for p in 1..=k {
            let fam = build_lopsided_universal(n, p, k - p)?;
            for s in fam.subsets() {
                generated += 1;
                seen.insert(MultisetVector::indicator(n, 1, s)?);
            }
        }
    }
    Ok(MultisetSeparator {
        n,
        r: 1,
        k: k as u32,
        t: 2 * k,
        members: seen.into_iter().collect(),
        generated,
        separating_size: generated as usize,
    })
}

/// The member `F^{h,w}` picked by the constructive argument for an
/// rk-compatible pair `(A, B)` with `r >= 2`.
pub fn multiset_witness(a: &MultisetVector, b: &MultisetVector, k: u32) -> Result<MultisetVector> {
    let (n, r) = (a.n(), a.cap());
    check_params(n, r, k)?;
    if r < 2 {
        return Err(param("the constructive witness needs r >= 2"));
    }
    if !a.is_rk_compatible(b, k)? {
        return Err(param(format!("({a}) and ({b}) are not rk-compatible")));
    }
    let t = (2 * k / r) as usize;
    let universe = n.max(t);
    let support: Vec<usize> = (0..n).filter(|&i| a.get(i) + b.get(i) > 0).collect();
    // Coordinates where floor(r/2) cannot sit between A_i and r - B_i.
    let mut c: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&i| 2 * a.get(i) > r || 2 * b.get(i) > r)
        .collect();
    let pad: Vec<usize> = support
        .iter()
        .copied()
        .filter(|i| !c.contains(i))
        .chain((0..universe).filter(|i| !support.contains(i)))
        .collect();
    let need = t
        .checked_sub(c.len())
        .ok_or_else(|| param("heavy set larger than t"))?;
    c.extend(pad.into_iter().take(need));
    c.sort_unstable();
    let d: Vec<usize> = support.iter().copied().filter(|i| !c.contains(i)).collect();
    let h = separating_witness(universe, t, k as usize, &c, &d)?;
    let mut w = vec![0u32; t];
    for &i in &c {
        w[h[i] as usize - 1] = if i < n { a.get(i) } else { 0 };
    }
    let counts: Vec<u32> = h[..n]
        .iter()
        .map(|&v| {
            if v as usize == t + 1 {
                r / 2
            } else {
                w[v as usize - 1]
            }
        })
        .collect();
    MultisetVector::new(r, &counts)
}

/// Every r-set over `[n]` of size at most `k`, lexicographic.
pub(crate) fn bounded_r_sets(n: usize, r: u32, k: u32) -> Vec<MultisetVector> {
    all_vectors(n, r)
        .filter(|c| c.iter().sum::<u32>() <= k)
        .map(|c| MultisetVector::new(r, &c).expect("within cap"))
        .collect()
}

/// Exhaustively checks the separator property; `A` and then `B` run in
/// lexicographic order.
pub fn verify_multiset_separator(sep: &MultisetSeparator, budget: Budget) -> Result<Verdict> {
    let (n, r, k) = (sep.n, sep.r, sep.k);
    let space = saturating_pow(u128::from(r) + 1, n as u32);
    budget.check(
        "multiset-separator verification",
        space
            .saturating_mul(space)
            .saturating_add(space.saturating_mul(sep.len() as u128)),
    )?;
    let sets = bounded_r_sets(n, r, k);
    let mut by_size: Vec<Vec<&MultisetVector>> = vec![Vec::new(); k as usize + 1];
    for s in &sets {
        by_size[s.size() as usize].push(s);
    }
    for a in &sets {
        let below: Vec<&MultisetVector> = sep.members.iter().filter(|f| a.fits_under(f)).collect();
        for b in &by_size[(k - a.size()) as usize] {
            if !a.sum_within_cap(b) {
                continue;
            }
            let cb = b.complement();
            if !below.iter().any(|f| f.fits_under(&cb)) {
                return Ok(Verdict::Violated(Counterexample::Multisets {
                    a: a.clone(),
                    b: (*b).clone(),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: u32, c: &[u32]) -> MultisetVector {
        MultisetVector::new(r, c).unwrap()
    }

    fn holds(sep: &MultisetSeparator) -> bool {
        verify_multiset_separator(sep, Budget::default())
            .unwrap()
            .holds()
    }

    #[test]
    fn small_separators_verify() {
        for (n, r, k) in [
            (2, 2, 2),
            (2, 2, 3),
            (1, 2, 2),
            (3, 3, 4),
            (3, 2, 4),
            (4, 2, 2),
        ] {
            let sep = build_multiset_separator(n, r, k).unwrap();
            assert_eq!(sep.t(), (2 * k / r) as usize);
            assert!(holds(&sep), "n={n} r={r} k={k}");
        }
    }

    #[test]
    fn generated_count_matches_size_formula() {
        for (n, r, k) in [(4, 2, 4), (3, 3, 4), (2, 2, 3), (5, 3, 3)] {
            let sep = build_multiset_separator(n, r, k).unwrap();
            let t = sep.t() as u32;
            assert_eq!(
                sep.generated(),
                sep.separating_size() as u128 * u128::from(r + 1).pow(t)
            );
        }
        let sep = build_multiset_separator(4, 2, 4).unwrap();
        assert_eq!(sep.t(), 4);
        assert_eq!(sep.generated(), sep.separating_size() as u128 * 81);
    }

    #[test]
    fn indicator_route() {
        for (n, k) in [(3, 1), (4, 2), (5, 3), (6, 4), (2, 3)] {
            let sep = build_multiset_separator(n, 1, k).unwrap();
            assert!(holds(&sep), "n={n} k={k}");
            assert!(sep.members().iter().all(|m| m.iter().all(|c| c <= 1)));
        }
    }

    #[test]
    fn trivial_separators() {
        let full: Vec<MultisetVector> = all_vectors(2, 2).map(|c| v(2, &c)).collect();
        assert!(holds(&MultisetSeparator::new(2, 2, 3, full).unwrap()));
        let empty = MultisetSeparator::new(1, 1, 1, vec![]).unwrap();
        assert!(!holds(&empty));
    }

    #[test]
    fn parameter_errors() {
        assert!(build_multiset_separator(2, 3, 2).is_err());
        assert!(build_multiset_separator(0, 2, 2).is_err());
        assert!(build_multiset_separator(2, 0, 2).is_err());
    }

    #[test]
    fn witness_is_a_member_between_the_pair() {
        for (n, r, k) in [
            (2, 2, 2),
            (3, 2, 3),
            (3, 3, 4),
            (1, 2, 2),
            (4, 2, 4),
            (3, 2, 2),
        ] {
            let sep = build_multiset_separator(n, r, k).unwrap();
            let sets = bounded_r_sets(n, r, k);
            for a in &sets {
                for b in &sets {
                    if !a.is_rk_compatible(b, k).unwrap() {
                        continue;
                    }
                    let f = multiset_witness(a, b, k).unwrap();
                    assert!(sep.members().binary_search(&f).is_ok(), "{a} {b} -> {f}");
                    assert!(a.fits_under(&f) && f.fits_under(&b.complement()));
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let sep = build_multiset_separator(2, 2, 2).unwrap();
        let text = sep.to_text();
        assert!(text.starts_with("msep n=2 r=2 k=2\n"));
        let back: MultisetSeparator = text.parse().unwrap();
        assert_eq!(back.members(), sep.members());
        assert!("msep n=2 r=2 k=2\n3 0\n"
            .parse::<MultisetSeparator>()
            .is_err());
        assert!("msep n=2 r=2 k=2\n1\n"
            .parse::<MultisetSeparator>()
            .is_err());
    }
}
