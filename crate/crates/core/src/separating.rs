//! Minimal separating families and lopsided universal sets.
//!
//! A `(t,k)`-minimal separating family over `[n]` is a set of functions
//! `[n] -> [t+1]` such that for all disjoint `C`, `D` with `|C| = t` and
//! `|D| <= k - t` some member maps `C` onto `[t]` and all of `D` to `t+1`.
//!
//! The builder enumerates every function reachable through five choices:
//! a `k`-perfect hash `f0: [n] -> [k^2]`, a `t`-perfect hash
//! `f1: [k^2] -> [t]` splitting the image into buckets, a bound `k_i` on how
//! many elements of `D` share each bucket, one separator per bucket picked
//! through a rectangle hitting set, and finally one value `j_i` per bucket.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::budget::{binomial, Budget};
use crate::combinatorics::{bounded_compositions, combinations, product};
use crate::error::{param, Error, Result};
use crate::family::{
    build_one_vs_many_separator, build_perfect_hash_small_range, build_rectangle_hitting_set,
    greedy_perfect_hash, parse_header, parse_u32_row, syntax, Density, FunctionFamily, Provenance,
};
use crate::verify::{Counterexample, Verdict};

/// Refuse constructions that would generate more candidate functions than this.
pub const BUILD_LIMIT: u128 = 20_000_000;

/// Verifiers use bitmasks over the universe.
const MAX_VERIFY_N: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSeparatingFamily {
    t: usize,
    k: usize,
    base: FunctionFamily,
}

impl MinimalSeparatingFamily {
    /// Wraps an arbitrary family `[n] -> [t+1]` for verification.
    pub fn new(base: FunctionFamily, t: usize, k: usize) -> Result<Self> {
        check_params(base.domain_size(), t, k)?;
        if base.range_size() != t + 1 {
            return Err(param(format!(
                "a ({t},{k})-separating family needs range {}, got {}",
                t + 1,
                base.range_size()
            )));
        }
        Ok(MinimalSeparatingFamily { t, k, base })
    }

    pub fn n(&self) -> usize {
        self.base.domain_size()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn family(&self) -> &FunctionFamily {
        &self.base
    }

    pub fn contains(&self, table: &[u32]) -> bool {
        self.base.tables().iter().any(|f| f.as_slice() == table)
    }
}

fn check_params(n: usize, t: usize, k: usize) -> Result<()> {
    if t == 0 {
        return Err(param("t must be at least 1"));
    }
    if t > n.min(k) {
        return Err(param(format!(
            "need t <= min(n, k), got n={n}, t={t}, k={k}"
        )));
    }
    Ok(())
}

/// The choices available at stages 1 and 2, plus the memoized per-bucket data.
struct Stages {
    n: usize,
    t: usize,
    k: usize,
    f0: Vec<Vec<u32>>,
    f1: Vec<Vec<u32>>,
    separators: HashMap<(usize, usize), FunctionFamily>,
    hitting: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

/// Buckets of one stage-2 function: `members[i]` lists the `[d0]` values
/// sent to bucket `i`, `slot[y]` is the position of `y` inside its bucket.
struct Buckets {
    members: Vec<Vec<usize>>,
    slot: Vec<usize>,
}

impl Stages {
    fn new(n: usize, t: usize, k: usize) -> Result<Self> {
        check_params(n, t, k)?;
        // Stage 1 is only needed to shrink the universe to k^2.
        let (f0, d0) = if n <= k * k {
            (FunctionFamily::identity(n, n), n)
        } else {
            (greedy_perfect_hash(n, k * k, k)?, k * k)
        };
        let f1 = build_perfect_hash_small_range(d0, t)?;
        Ok(Stages {
            n,
            t,
            k,
            f0: f0.into_tables(),
            f1: f1.into_tables(),
            separators: HashMap::new(),
            hitting: HashMap::new(),
        })
    }

    fn buckets(&self, f1: &[u32]) -> Buckets {
        let mut members = vec![Vec::new(); self.t];
        let mut slot = vec![0; f1.len()];
        for (y, &v) in f1.iter().enumerate() {
            let b = &mut members[v as usize - 1];
            slot[y] = b.len();
            b.push(y);
        }
        Buckets { members, slot }
    }

    /// A composition is usable only if every bucket can hold one element of
    /// `C` and `k_i` elements of `D`.
    fn realizable(buckets: &Buckets, ks: &[usize]) -> bool {
        buckets.members.iter().zip(ks).all(|(b, &ki)| ki < b.len())
    }

    fn separator(&mut self, size: usize, ki: usize) -> Result<&FunctionFamily> {
        Ok(match self.separators.entry((size, ki)) {
            Entry::Occupied(slot) => slot.into_mut(),
            Entry::Vacant(slot) => slot.insert(if ki == 0 {
                FunctionFamily::constant(size, 1)
            } else {
                build_one_vs_many_separator(size, ki)?
            }),
        })
    }

    fn hitting_points(&mut self, sides: &[usize]) -> Result<&Vec<Vec<usize>>> {
        if !self.hitting.contains_key(sides) {
            let set = build_rectangle_hitting_set(sides, Density::HALF)?;
            self.hitting.insert(sides.to_vec(), set.points);
        }
        Ok(&self.hitting[sides])
    }

    fn bucket_families(&mut self, buckets: &Buckets, ks: &[usize]) -> Result<Vec<FunctionFamily>> {
        buckets
            .members
            .iter()
            .zip(ks)
            .map(|(b, &ki)| self.separator(b.len(), ki).cloned())
            .collect()
    }

    /// The final function for one full choice sequence.
    fn assemble(
        &self,
        f0: &[u32],
        f1: &[u32],
        buckets: &Buckets,
        chosen: &[&[u32]],
        js: &[u32],
    ) -> Vec<u32> {
        let other = self.t as u32 + 1;
        f0.iter()
            .map(|&y| {
                let y = y as usize - 1;
                let i = f1[y] as usize - 1;
                if chosen[i][buckets.slot[y]] == js[i] {
                    i as u32 + 1
                } else {
                    other
                }
            })
            .collect()
    }

    fn build(&mut self) -> Result<BTreeSet<Vec<u32>>> {
        let compositions = bounded_compositions(self.t, self.k - self.t);
        let f1s = self.f1.clone();
        let mut out = BTreeSet::new();
        let mut generated: u128 = 0;
        for f1 in &f1s {
            let buckets = self.buckets(f1);
            for ks in &compositions {
                if !Self::realizable(&buckets, ks) {
                    continue;
                }
                let fams = self.bucket_families(&buckets, ks)?;
                let sides: Vec<usize> = fams.iter().map(|f| f.len()).collect();
                let ranges: Vec<usize> = fams.iter().map(|f| f.range_size()).collect();
                let points = self.hitting_points(&sides)?.clone();
                let per_point: u128 = ranges.iter().map(|&r| r as u128).product();
                generated = generated.saturating_add(
                    per_point
                        .saturating_mul(points.len() as u128)
                        .saturating_mul(self.f0.len() as u128),
                );
                if generated > BUILD_LIMIT {
                    return Err(Error::Budget {
                        what: format!(
                            "({},{})-minimal separating family over [{}]",
                            self.t, self.k, self.n
                        ),
                        needed: generated,
                        limit: BUILD_LIMIT as u64,
                    });
                }
                for p in &points {
                    let chosen: Vec<&[u32]> = fams
                        .iter()
                        .zip(p)
                        .map(|(f, &idx)| f.tables()[idx].as_slice())
                        .collect();
                    for js in product(&ranges) {
                        let js: Vec<u32> = js.iter().map(|&j| j as u32 + 1).collect();
                        for f0 in &self.f0 {
                            out.insert(self.assemble(f0, f1, &buckets, &chosen, &js));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Follows the constructive argument for one pair `(C, D)` and returns the
    /// member it lands on.
    fn replay(&mut self, c: &[usize], d: &[usize]) -> Result<Vec<u32>> {
        let fail = |stage: u32| param(format!("stage {stage} of the replay found no valid choice"));
        let both: Vec<usize> = c.iter().chain(d).copied().collect();
        let f0 = self
            .f0
            .iter()
            .find(|f| injective(f, &both))
            .ok_or_else(|| fail(1))?
            .clone();
        let image_c: Vec<usize> = c.iter().map(|&x| f0[x] as usize - 1).collect();
        let f1 = self
            .f1
            .iter()
            .find(|f| injective(f, &image_c))
            .ok_or_else(|| fail(2))?
            .clone();
        let buckets = self.buckets(&f1);
        let bucket_of = |x: usize| f1[f0[x] as usize - 1] as usize - 1;
        let mut ks = vec![0; self.t];
        for &x in d {
            ks[bucket_of(x)] += 1;
        }
        let mut rep = vec![0; self.t];
        for &x in c {
            rep[bucket_of(x)] = x;
        }
        let fams = self.bucket_families(&buckets, &ks)?;
        let sides: Vec<usize> = fams.iter().map(|f| f.len()).collect();
        let points = self.hitting_points(&sides)?.clone();
        let separates = |i: usize, member: usize| {
            let h = &fams[i].tables()[member];
            let a = h[buckets.slot[f0[rep[i]] as usize - 1]];
            d.iter()
                .filter(|&&x| bucket_of(x) == i)
                .all(|&x| h[buckets.slot[f0[x] as usize - 1]] != a)
        };
        let p = points
            .iter()
            .find(|p| p.iter().enumerate().all(|(i, &m)| separates(i, m)))
            .ok_or_else(|| fail(4))?;
        let chosen: Vec<&[u32]> = fams
            .iter()
            .zip(p)
            .map(|(f, &idx)| f.tables()[idx].as_slice())
            .collect();
        let js: Vec<u32> = (0..self.t)
            .map(|i| chosen[i][buckets.slot[f0[rep[i]] as usize - 1]])
            .collect();
        Ok(self.assemble(&f0, &f1, &buckets, &chosen, &js))
    }
}

fn injective(f: &[u32], set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &x)| set[..i].iter().all(|&y| f[x] != f[y]))
}

pub fn build_minimal_separating(n: usize, t: usize, k: usize) -> Result<MinimalSeparatingFamily> {
    let tables = Stages::new(n, t, k)?.build()?;
    let base = FunctionFamily::new(
        n,
        t + 1,
        tables.into_iter().collect(),
        Provenance::MinimalSeparating,
    )?;
    Ok(MinimalSeparatingFamily { t, k, base })
}

/// The member reached by the constructive argument for the pair `(C, D)`.
///
/// `c` must have exactly `t` elements, `d` at most `k - t`, and they must be
/// disjoint subsets of `0..n`.
pub fn separating_witness(
    n: usize,
    t: usize,
    k: usize,
    c: &[usize],
    d: &[usize],
) -> Result<Vec<u32>> {
    check_params(n, t, k)?;
    if c.len() != t || d.len() > k - t {
        return Err(param(format!("need |C| = {t} and |D| <= {}", k - t)));
    }
    let mut all: Vec<usize> = c.iter().chain(d).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != c.len() + d.len() || all.last().is_some_and(|&x| x >= n) {
        return Err(param("C and D must be disjoint subsets of the universe"));
    }
    Stages::new(n, t, k)?.replay(c, d)
}

fn mask_of(set: &[usize]) -> u128 {
    set.iter().fold(0, |m, &x| m | 1 << x)
}

fn check_verify_size(n: usize) -> Result<()> {
    if n > MAX_VERIFY_N {
        return Err(param(format!(
            "exhaustive verification supports n <= {MAX_VERIFY_N}"
        )));
    }
    Ok(())
}

/// Exhaustively checks the separating property over all admissible `(C, D)`.
///
/// `C` runs over `t`-subsets in lexicographic order; for each `C`, `D` runs
/// over subsets of the rest by size, then lexicographically. The first
/// failing pair is returned.
pub fn verify_minimal_separating(fam: &MinimalSeparatingFamily, budget: Budget) -> Result<Verdict> {
    let (n, t, k) = (fam.n(), fam.t, fam.k);
    check_verify_size(n)?;
    let rest = n - t;
    let ds: u128 = (0..=(k - t).min(rest))
        .map(|j| binomial(rest as u64, j as u64))
        .sum();
    budget.check(
        "minimal-separating verification",
        binomial(n as u64, t as u64)
            .saturating_mul(ds)
            .saturating_mul(fam.len().max(1) as u128),
    )?;
    let other = t as u32 + 1;
    // For each member: where it sends elements, and which elements go to t+1.
    let avoid: Vec<u128> = fam
        .base
        .tables()
        .iter()
        .map(|f| (0..n).filter(|&x| f[x] == other).fold(0, |m, x| m | 1 << x))
        .collect();
    for c in combinations(n, t) {
        let onto: Vec<u128> = fam
            .base
            .tables()
            .iter()
            .zip(&avoid)
            .filter(|(f, _)| {
                let mut seen = 0u128;
                c.iter().all(|&x| {
                    let v = f[x];
                    let fresh = v != other && seen >> v & 1 == 0;
                    seen |= 1 << v;
                    fresh
                })
            })
            .map(|(_, &m)| m)
            .collect();
        let pool: Vec<usize> = (0..n).filter(|x| !c.contains(x)).collect();
        for d in crate::combinatorics::subsets_up_to(&pool, k - t) {
            let dm = mask_of(&d);
            if !onto.iter().any(|&m| dm & m == dm) {
                return Ok(Verdict::Violated(Counterexample::Separation { c, d }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Subsets of `[n]` such that every disjoint `(A, B)` with `|A| = p`,
/// `|B| = q` has a member containing `A` and avoiding `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalSetFamily {
    n: usize,
    p: usize,
    q: usize,
    subsets: Vec<Vec<usize>>,
}

impl UniversalSetFamily {
    /// Subsets are 0-based; each is sorted and deduplicated on entry.
    pub fn new(n: usize, p: usize, q: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        if p + q > n {
            return Err(param(format!("need p + q <= n, got p={p}, q={q}, n={n}")));
        }
        let mut clean = Vec::with_capacity(subsets.len());
        for mut s in subsets {
            s.sort_unstable();
            s.dedup();
            if s.last().is_some_and(|&x| x >= n) {
                return Err(param(format!("subset element exceeds n={n}")));
            }
            clean.push(s);
        }
        Ok(UniversalSetFamily {
            n,
            p,
            q,
            subsets: clean,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for UniversalSetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "universal n={} p={} q={} count={}",
            self.n,
            self.p,
            self.q,
            self.subsets.len()
        )?;
        for s in &self.subsets {
            let items: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for UniversalSetFamily {
    type Err = Error;

    /// One subset per line after the header; an empty line is the empty set.
    fn from_str(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let header = lines.first().ok_or_else(|| syntax(1, 1, "empty input"))?;
        let h = parse_header(header, "universal", &["n", "p", "q", "count"], 1)?;
        let (n, p, q, count) = (h[0], h[1], h[2], h[3]);
        if lines.len() < count + 1 {
            return Err(syntax(lines.len() + 1, 1, "fewer subsets than announced").into());
        }
        let mut subsets = Vec::with_capacity(count);
        for (idx, line) in lines.iter().enumerate().skip(1).take(count) {
            let row = parse_u32_row(line, idx + 1)?;
            if let Some(pos) = row.iter().position(|&v| v == 0 || v as usize > n) {
                return Err(syntax(idx + 1, pos + 1, "element outside 1..=n").into());
            }
            subsets.push(row.iter().map(|&v| v as usize - 1).collect());
        }
        if let Some(extra) = lines
            .iter()
            .skip(count + 1)
            .position(|l| !l.trim().is_empty())
        {
            return Err(syntax(count + 2 + extra, 1, "more subsets than announced").into());
        }
        UniversalSetFamily::new(n, p, q, subsets)
    }
}

/// `{ h^-1([p]) : h in the (p, p+q)-minimal separating family }`.
pub fn build_lopsided_universal(n: usize, p: usize, q: usize) -> Result<UniversalSetFamily> {
    if p == 0 {
        return Err(param("p must be at least 1"));
    }
    if p + q > n {
        return Err(param(format!("need p + q <= n, got p={p}, q={q}, n={n}")));
    }
    let sep = build_minimal_separating(n, p, p + q)?;
    let subsets: BTreeSet<Vec<usize>> = sep
        .base
        .tables()
        .iter()
        .map(|h| (0..n).filter(|&x| h[x] as usize <= p).collect())
        .collect();
    UniversalSetFamily::new(n, p, q, subsets.into_iter().collect())
}

/// Exhaustively checks the lopsided universal property; `A` and then `B`
/// run in lexicographic order.
pub fn verify_lopsided(fam: &UniversalSetFamily, budget: Budget) -> Result<Verdict> {
    let (n, p, q) = (fam.n, fam.p, fam.q);
    check_verify_size(n)?;
    budget.check(
        "lopsided universal verification",
        binomial(n as u64, p as u64)
            .saturating_mul(binomial((n - p) as u64, q as u64))
            .saturating_mul(fam.len().max(1) as u128),
    )?;
    let masks: Vec<u128> = fam.subsets.iter().map(|s| mask_of(s)).collect();
    for a in combinations(n, p) {
        let am = mask_of(&a);
        let containing: Vec<u128> = masks.iter().copied().filter(|&m| m & am == am).collect();
        let pool: Vec<usize> = (0..n).filter(|x| !a.contains(x)).collect();
        for ix in combinations(pool.len(), q) {
            let b: Vec<usize> = ix.iter().map(|&i| pool[i]).collect();
            let bm = mask_of(&b);
            if !containing.iter().any(|&m| m & bm == 0) {
                return Ok(Verdict::Violated(Counterexample::Lopsided { a, b }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verified(fam: &MinimalSeparatingFamily) -> bool {
        verify_minimal_separating(fam, Budget::default())
            .unwrap()
            .holds()
    }

    fn all_functions(n: usize, s: usize) -> FunctionFamily {
        let tables = product(&vec![s; n])
            .map(|v| v.iter().map(|&x| x as u32 + 1).collect())
            .collect();
        FunctionFamily::new(n, s, tables, Provenance::Explicit).unwrap()
    }

    #[test]
    fn small_families_verify() {
        for (n, t, k) in [
            (3, 1, 1),
            (4, 2, 3),
            (6, 2, 4),
            (5, 1, 3),
            (8, 2, 2),
            (7, 3, 5),
        ] {
            let fam = build_minimal_separating(n, t, k).unwrap();
            assert!(fam.family().tables().iter().all(|f| f.len() == n));
            assert!(verified(&fam), "n={n} t={t} k={k}");
        }
    }

    #[test]
    fn full_function_space_verifies() {
        let fam = MinimalSeparatingFamily::new(all_functions(4, 3), 2, 3).unwrap();
        assert!(verified(&fam));
    }

    #[test]
    fn empty_family_reports_first_pair() {
        let empty = FunctionFamily::new(4, 3, vec![], Provenance::Explicit).unwrap();
        let fam = MinimalSeparatingFamily::new(empty, 2, 3).unwrap();
        assert_eq!(
            verify_minimal_separating(&fam, Budget::default()).unwrap(),
            Verdict::Violated(Counterexample::Separation {
                c: vec![0, 1],
                d: vec![]
            })
        );
    }

    #[test]
    fn parameter_errors() {
        assert!(build_minimal_separating(3, 0, 2).is_err());
        assert!(build_minimal_separating(3, 3, 2).is_err());
        assert!(build_minimal_separating(2, 3, 4).is_err());
        assert!(build_lopsided_universal(3, 2, 2).is_err());
        assert!(build_lopsided_universal(3, 0, 2).is_err());
    }

    #[test]
    fn replay_lands_on_members() {
        for (n, t, k) in [(5, 2, 4), (6, 3, 5), (8, 1, 2), (9, 2, 2)] {
            let fam = build_minimal_separating(n, t, k).unwrap();
            for c in combinations(n, t) {
                let pool: Vec<usize> = (0..n).filter(|x| !c.contains(x)).collect();
                for d in crate::combinatorics::subsets_up_to(&pool, k - t) {
                    let h = separating_witness(n, t, k, &c, &d).unwrap();
                    assert!(fam.contains(&h), "n={n} t={t} k={k} C={c:?} D={d:?}");
                    let mut image: Vec<u32> = c.iter().map(|&x| h[x]).collect();
                    image.sort_unstable();
                    assert_eq!(image, (1..=t as u32).collect::<Vec<_>>());
                    assert!(d.iter().all(|&x| h[x] == t as u32 + 1));
                }
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let a = build_minimal_separating(7, 2, 4).unwrap();
        let b = build_minimal_separating(7, 2, 4).unwrap();
        assert_eq!(a.family().to_text(), b.family().to_text());
    }

    #[test]
    fn lopsided_examples() {
        for (n, p, q) in [(3, 1, 1), (2, 2, 0), (5, 2, 2), (4, 1, 2), (6, 3, 2)] {
            let fam = build_lopsided_universal(n, p, q).unwrap();
            assert!(
                verify_lopsided(&fam, Budget::default()).unwrap().holds(),
                "{n} {p} {q}"
            );
        }
        let singletons = UniversalSetFamily::new(3, 1, 2, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(verify_lopsided(&singletons, Budget::default())
            .unwrap()
            .holds());
        let whole = UniversalSetFamily::new(3, 1, 1, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(
            verify_lopsided(&whole, Budget::default()).unwrap(),
            Verdict::Violated(Counterexample::Lopsided {
                a: vec![0],
                b: vec![1]
            })
        );
    }

    #[test]
    fn universal_text_round_trip() {
        let fam = build_lopsided_universal(4, 1, 2).unwrap();
        let text = fam.to_text();
        let back: UniversalSetFamily = text.parse().unwrap();
        assert_eq!(back, fam);
        let with_empty = UniversalSetFamily::new(2, 1, 0, vec![vec![], vec![0, 1]]).unwrap();
        assert_eq!(
            with_empty.to_text(),
            "universal n=2 p=1 q=0 count=2\n\n1 2\n"
        );
        assert_eq!(
            with_empty.to_text().parse::<UniversalSetFamily>().unwrap(),
            with_empty
        );
        assert!("universal n=2 p=1 q=0 count=1\n3\n"
            .parse::<UniversalSetFamily>()
            .is_err());
        assert!("universal n=2 p=1 q=0 count=1\n1\n2\n"
            .parse::<UniversalSetFamily>()
            .is_err());
    }
}
