//! Weighted multiset families, trimming to representative families, and the
//! union and bullet operations the solvers combine them with.
//!
//! A family `P̂ ⊆ P` represents `P` if for every r-set `Q` of size at most
//! `k`: whenever some `P ∈ P` is rk-compatible with `Q`, some `P' ∈ P̂` is
//! rk-compatible with `Q` and no heavier.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::budget::{saturating_pow, Budget};
use crate::error::{dim, param, Error, Result};
use crate::family::{parse_u32_row, syntax};
use crate::msep::{bounded_r_sets, build_multiset_separator, MultisetSeparator};
use crate::multiset::{MultisetVector, WeightedUniverse};
use crate::verify::{Counterexample, Verdict};

/// One member of a weighted family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub set: MultisetVector,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMultisetFamily {
    universe: WeightedUniverse,
    r: u32,
    k: u32,
    entries: Vec<Entry>,
}

impl WeightedMultisetFamily {
    pub fn new(universe: WeightedUniverse, r: u32, k: u32) -> Result<Self> {
        if r == 0 {
            return Err(param("multiplicity cap r must be positive"));
        }
        Ok(WeightedMultisetFamily {
            universe,
            r,
            k,
            entries: Vec::new(),
        })
    }

    /// A family whose members carry their universe weight.
    pub fn from_sets(
        universe: WeightedUniverse,
        r: u32,
        k: u32,
        sets: impl IntoIterator<Item = MultisetVector>,
    ) -> Result<Self> {
        let mut fam = Self::new(universe, r, k)?;
        for s in sets {
            fam.push(s)?;
        }
        Ok(fam)
    }

    fn check(&self, set: &MultisetVector) -> Result<()> {
        if set.n() != self.universe.n() || set.cap() != self.r {
            return Err(dim(format!(
                "member ({set}) does not match n={} r={}",
                self.universe.n(),
                self.r
            )));
        }
        if set.size() > self.k {
            return Err(param(format!("member ({set}) has size above k={}", self.k)));
        }
        Ok(())
    }

    /// Adds `set` with weight `sum_i set_i * wt(i)`.
    pub fn push(&mut self, set: MultisetVector) -> Result<()> {
        self.check(&set)?;
        let weight = set.weight(&self.universe)?;
        self.entries.push(Entry { set, weight });
        Ok(())
    }

    /// Adds `set` with an explicit weight.
    pub fn push_weighted(&mut self, set: MultisetVector, weight: i64) -> Result<()> {
        self.check(&set)?;
        self.entries.push(Entry { set, weight });
        Ok(())
    }

    pub fn universe(&self) -> &WeightedUniverse {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.n()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The subfamily at the given entry positions, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        WeightedMultisetFamily {
            universe: self.universe.clone(),
            r: self.r,
            k: self.k,
            entries: indices.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    fn same_params(&self, other: &Self) -> Result<()> {
        if self.universe != other.universe || self.r != other.r || self.k != other.k {
            return Err(param("families differ in universe, r or k"));
        }
        Ok(())
    }

    fn empty_like(&self) -> Self {
        WeightedMultisetFamily {
            universe: self.universe.clone(),
            r: self.r,
            k: self.k,
            entries: Vec::new(),
        }
    }

    /// Lightest member rk-compatible with `q`.
    pub fn min_compatible_weight(&self, q: &MultisetVector) -> Option<i64> {
        self.entries
            .iter()
            .filter(|e| e.set.size() + q.size() == self.k && e.set.sum_within_cap(q))
            .map(|e| e.weight)
            .min()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WeightedMultisetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "wmsfam {} {} {}", self.n(), self.r, self.k)?;
        let w: Vec<String> = self
            .universe
            .weights()
            .iter()
            .map(|x| x.to_string())
            .collect();
        writeln!(f, "{}", w.join(" "))?;
        for e in &self.entries {
            if self.n() == 0 {
                writeln!(f, "{}", e.weight)?;
            } else {
                writeln!(f, "{} {}", e.set, e.weight)?;
            }
        }
        Ok(())
    }
}

fn parse_i64_row(line: &str, lineno: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if !tok.is_empty() {
            let v = tok
                .parse::<i64>()
                .map_err(|_| syntax(lineno, col, &format!("expected integer, found `{tok}`")))?;
            out.push(v);
        }
        col += tok.len() + 1;
    }
    Ok(out)
}

impl FromStr for WeightedMultisetFamily {
    type Err = Error;

    /// `wmsfam <n> <r> <k>`, a line of element weights, then one
    /// `<counts...> <weight>` line per member.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("wmsfam") {
            return Err(syntax(1, 1, "expected `wmsfam` header").into());
        }
        let nums = parse_u32_row(&parts.collect::<Vec<_>>().join(" "), 1)?;
        if nums.len() != 3 {
            return Err(syntax(1, 8, "expected `wmsfam <n> <r> <k>`").into());
        }
        let (n, r, k) = (nums[0] as usize, nums[1], nums[2]);
        let (wl, wline) = lines
            .next()
            .ok_or_else(|| syntax(2, 1, "missing weight line"))?;
        let weights = parse_i64_row(wline, wl + 1)?;
        if weights.len() != n {
            return Err(syntax(
                wl + 1,
                1,
                &format!("expected {n} weights, found {}", weights.len()),
            )
            .into());
        }
        let mut fam = WeightedMultisetFamily::new(WeightedUniverse::new(weights), r, k)?;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row = parse_i64_row(line, idx + 1)?;
            if row.len() != n + 1 {
                return Err(
                    syntax(idx + 1, 1, &format!("expected {n} counts and a weight")).into(),
                );
            }
            let mut counts = Vec::with_capacity(n);
            for (pos, &c) in row[..n].iter().enumerate() {
                if c < 0 || c > i64::from(r) {
                    return Err(syntax(idx + 1, pos + 1, "count outside 0..=r").into());
                }
                counts.push(c as u32);
            }
            let set = MultisetVector::new(r, &counts)?;
            fam.push_weighted(set, row[n])?;
        }
        Ok(fam)
    }
}

/// Positions kept by trimming `p` against `sep`, in their original order.
///
/// For each `F` in the separator and each size `i` in `1..=k`, the lightest
/// member of size `i` below `F` is kept (ties go to the earliest). The empty
/// multiset is below every `F`, so its lightest copy is kept once.
pub fn trim_selection(p: &WeightedMultisetFamily, sep: &MultisetSeparator) -> Result<Vec<usize>> {
    if sep.n() != p.n() || sep.r() != p.r() || sep.k() != p.k() {
        return Err(param(format!(
            "separator is for (n={}, r={}, k={}), family is (n={}, r={}, k={})",
            sep.n(),
            sep.r(),
            sep.k(),
            p.n(),
            p.r(),
            p.k()
        )));
    }
    let k = p.k as usize;
    let mut keep = vec![false; p.len()];
    let lightest = |it: &mut dyn Iterator<Item = usize>| -> Option<usize> {
        it.fold(None, |best: Option<usize>, i| match best {
            Some(b) if p.entries[b].weight <= p.entries[i].weight => Some(b),
            _ => Some(i),
        })
    };
    if !sep.is_empty() {
        if let Some(i) = lightest(&mut (0..p.len()).filter(|&i| p.entries[i].set.size() == 0)) {
            keep[i] = true;
        }
    }
    let mut best: Vec<Option<usize>> = vec![None; k + 1];
    for f in sep.members() {
        best.iter_mut().for_each(|b| *b = None);
        for (i, e) in p.entries.iter().enumerate() {
            let s = e.set.size() as usize;
            if s == 0 || !e.set.fits_under(f) {
                continue;
            }
            match best[s] {
                Some(b) if p.entries[b].weight <= e.weight => {}
                _ => best[s] = Some(i),
            }
        }
        for i in best.iter().flatten() {
            keep[*i] = true;
        }
    }
    Ok((0..p.len()).filter(|&i| keep[i]).collect())
}

pub fn trim(p: &WeightedMultisetFamily, sep: &MultisetSeparator) -> Result<WeightedMultisetFamily> {
    Ok(p.select(&trim_selection(p, sep)?))
}

type SeparatorCache = Mutex<HashMap<(usize, u32, u32), Arc<MultisetSeparator>>>;

/// The `(n, r, k)` separator, built once per process.
pub fn cached_separator(n: usize, r: u32, k: u32) -> Result<Arc<MultisetSeparator>> {
    static CACHE: OnceLock<SeparatorCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(sep) = cache.lock().expect("cache lock").get(&(n, r, k)) {
        return Ok(Arc::clone(sep));
    }
    let sep = Arc::new(build_multiset_separator(n, r, k)?);
    cache
        .lock()
        .expect("cache lock")
        .insert((n, r, k), Arc::clone(&sep));
    Ok(sep)
}

/// Positions of a representative subfamily of `p`.
///
/// When `r >= k` no coordinate can overflow, compatibility depends only on
/// sizes, and the lightest member of each size suffices.
pub fn representative_selection(p: &WeightedMultisetFamily) -> Result<Vec<usize>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    if p.k == 0 || p.r >= p.k {
        let mut best: Vec<Option<usize>> = vec![None; p.k as usize + 1];
        for (i, e) in p.entries.iter().enumerate() {
            let s = e.set.size() as usize;
            match best[s] {
                Some(b) if p.entries[b].weight <= e.weight => {}
                _ => best[s] = Some(i),
            }
        }
        let mut keep: Vec<usize> = best.into_iter().flatten().collect();
        keep.sort_unstable();
        return Ok(keep);
    }
    let sep = cached_separator(p.n(), p.r, p.k)?;
    trim_selection(p, &sep)
}

pub fn compute_representative(p: &WeightedMultisetFamily) -> Result<WeightedMultisetFamily> {
    Ok(p.select(&representative_selection(p)?))
}

/// Checks that `phat` represents `p` against every r-set `Q` of size at most `k`.
pub fn verify_representative(
    p: &WeightedMultisetFamily,
    phat: &WeightedMultisetFamily,
    budget: Budget,
) -> Result<Verdict> {
    p.same_params(phat)?;
    let space = saturating_pow(u128::from(p.r) + 1, p.n() as u32);
    budget.check(
        "representative-family verification",
        space.saturating_mul((p.len() + phat.len()).max(1) as u128),
    )?;
    let Some(smallest) = p.entries.iter().map(|e| e.set.size()).min() else {
        return Ok(Verdict::Holds);
    };
    for q in bounded_r_sets(p.n(), p.r, p.k - smallest) {
        if let Some(w) = p.min_compatible_weight(&q) {
            if phat.min_compatible_weight(&q).is_none_or(|w2| w2 > w) {
                return Ok(Verdict::Violated(Counterexample::Representative { q }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Appends `entry`, or lowers the weight of an existing copy of its set.
fn insert_min(out: &mut Vec<Entry>, index: &mut HashMap<MultisetVector, usize>, entry: Entry) {
    match index.get(&entry.set) {
        Some(&i) => {
            if entry.weight < out[i].weight {
                out[i].weight = entry.weight;
            }
        }
        None => {
            index.insert(entry.set.clone(), out.len());
            out.push(entry);
        }
    }
}

/// `A ∪ B`, one entry per distinct set carrying its lowest weight.
pub fn family_union(
    a: &WeightedMultisetFamily,
    b: &WeightedMultisetFamily,
) -> Result<WeightedMultisetFamily> {
    a.same_params(b)?;
    let mut out = a.empty_like();
    let mut index = HashMap::new();
    for e in a.entries.iter().chain(&b.entries) {
        insert_min(&mut out.entries, &mut index, e.clone());
    }
    Ok(out)
}

/// `A • B`: sums of rk-consistent pairs, weights added, lowest weight kept per set.
pub fn family_bullet(
    a: &WeightedMultisetFamily,
    b: &WeightedMultisetFamily,
) -> Result<WeightedMultisetFamily> {
    a.same_params(b)?;
    let mut out = a.empty_like();
    let mut index = HashMap::new();
    for x in &a.entries {
        for y in &b.entries {
            if let Some(set) = x.set.add_consistent(&y.set, a.k) {
                insert_min(
                    &mut out.entries,
                    &mut index,
                    Entry {
                        set,
                        weight: x.weight + y.weight,
                    },
                );
            }
        }
    }
    Ok(out)
}

/// `A • i`: each member with one more copy of `i` (0-based), when that stays
/// within the caps. The weight grows by `wt(i)`.
pub fn family_bullet_element(
    a: &WeightedMultisetFamily,
    i: usize,
) -> Result<WeightedMultisetFamily> {
    if i >= a.n() {
        return Err(dim(format!(
            "element {} outside universe of size {}",
            i + 1,
            a.n()
        )));
    }
    let extra = a.universe.weight_of(i);
    let mut out = a.empty_like();
    let mut index = HashMap::new();
    for e in &a.entries {
        if let Some(set) = e.set.add_element(i, a.k) {
            insert_min(
                &mut out.entries,
                &mut index,
                Entry {
                    set,
                    weight: e.weight + extra,
                },
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::all_vectors;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(r: u32, c: &[u32]) -> MultisetVector {
        MultisetVector::new(r, c).unwrap()
    }

    fn weighted(n: usize, r: u32, k: u32, items: &[(&[u32], i64)]) -> WeightedMultisetFamily {
        let mut fam = WeightedMultisetFamily::new(WeightedUniverse::uniform(n, 1), r, k).unwrap();
        for (c, w) in items {
            fam.push_weighted(v(r, c), *w).unwrap();
        }
        fam
    }

    fn sets(fam: &WeightedMultisetFamily) -> Vec<Vec<u32>> {
        fam.entries().iter().map(|e| e.set.counts()).collect()
    }

    fn random_family(
        rng: &mut ChaCha8Rng,
        n: usize,
        r: u32,
        k: u32,
        max: usize,
    ) -> WeightedMultisetFamily {
        let weights = (0..n).map(|_| rng.gen_range(0..5)).collect();
        let pool: Vec<Vec<u32>> = all_vectors(n, r)
            .filter(|c| c.iter().sum::<u32>() <= k)
            .collect();
        let mut fam = WeightedMultisetFamily::new(WeightedUniverse::new(weights), r, k).unwrap();
        for _ in 0..rng.gen_range(0..=max) {
            let c = &pool[rng.gen_range(0..pool.len())];
            let set = v(r, c);
            if rng.gen_bool(0.5) {
                fam.push(set).unwrap();
            } else {
                fam.push_weighted(set, rng.gen_range(-3..10)).unwrap();
            }
        }
        fam
    }

    #[test]
    fn trim_example() {
        let p = weighted(
            2,
            2,
            2,
            &[(&[2, 0], 2), (&[1, 1], 3), (&[0, 2], 10), (&[1, 0], 1)],
        );
        let sep = MultisetSeparator::new(2, 2, 2, vec![v(2, &[2, 2])]).unwrap();
        let t = trim(&p, &sep).unwrap();
        assert_eq!(sets(&t), vec![vec![2, 0], vec![1, 0]]);
        assert!(trim(&p.empty_like(), &sep).unwrap().is_empty());
        let none = MultisetSeparator::new(2, 2, 2, vec![]).unwrap();
        assert!(trim(&p, &none).unwrap().is_empty());
    }

    #[test]
    fn trim_rejects_mismatch() {
        let p = weighted(2, 2, 2, &[(&[1, 0], 1)]);
        let sep = MultisetSeparator::new(2, 2, 3, vec![]).unwrap();
        assert!(trim(&p, &sep).is_err());
    }

    #[test]
    fn singletons_and_duplicates() {
        let p = weighted(2, 2, 2, &[(&[1, 1], 4)]);
        assert_eq!(compute_representative(&p).unwrap(), p);
        let p = weighted(2, 2, 3, &[(&[1, 1], 4), (&[1, 1], 2)]);
        let rep = compute_representative(&p).unwrap();
        assert_eq!(rep.entries().len(), 1);
        assert_eq!(rep.entries()[0].weight, 2);
    }

    #[test]
    fn verify_detects_missing_member() {
        let p = weighted(2, 1, 2, &[(&[1, 1], 0)]);
        let v = verify_representative(&p, &p.empty_like(), Budget::default()).unwrap();
        assert_eq!(
            v,
            Verdict::Violated(Counterexample::Representative {
                q: MultisetVector::zeros(2, 1).unwrap()
            })
        );
        assert!(verify_representative(&p, &p, Budget::default())
            .unwrap()
            .holds());
    }

    #[test]
    fn random_trims_represent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..120 {
            let n = rng.gen_range(1..=3);
            let r = rng.gen_range(1..=2);
            let k = rng.gen_range(1..=4);
            let p = random_family(&mut rng, n, r, k, 30);
            let rep = compute_representative(&p).unwrap();
            assert!(
                verify_representative(&p, &rep, Budget::default())
                    .unwrap()
                    .holds(),
                "round {round}: n={n} r={r} k={k}"
            );
            let again = compute_representative(&rep).unwrap();
            assert!(verify_representative(&p, &again, Budget::default())
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn union_and_bullet() {
        let a = weighted(2, 1, 2, &[(&[1, 0], 1)]);
        let b = weighted(2, 1, 2, &[(&[1, 0], 2)]);
        let u = family_union(&a, &b).unwrap();
        assert_eq!(
            u.entries(),
            &[Entry {
                set: v(1, &[1, 0]),
                weight: 1
            }]
        );
        assert_eq!(family_union(&a, &a.empty_like()).unwrap(), a);

        let c = weighted(2, 1, 2, &[(&[0, 1], 5)]);
        let ac = family_bullet(&a, &c).unwrap();
        assert_eq!(
            ac.entries(),
            &[Entry {
                set: v(1, &[1, 1]),
                weight: 6
            }]
        );
        assert!(family_bullet(&a, &a).unwrap().is_empty());
    }

    #[test]
    fn bullet_element_respects_caps() {
        let a = weighted(2, 2, 2, &[(&[2, 0], 0), (&[1, 0], 0), (&[1, 1], 0)]);
        let out = family_bullet_element(&a, 0).unwrap();
        assert_eq!(sets(&out), vec![vec![2, 0]]);
        assert_eq!(out.entries()[0].weight, 1);
        assert!(family_bullet_element(&a, 2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut fam =
            WeightedMultisetFamily::new(WeightedUniverse::new(vec![3, -1]), 2, 3).unwrap();
        fam.push(v(2, &[1, 2])).unwrap();
        fam.push_weighted(v(2, &[0, 0]), 7).unwrap();
        let text = fam.to_text();
        assert_eq!(text, "wmsfam 2 2 3\n3 -1\n1 2 1\n0 0 7\n");
        assert_eq!(text.parse::<WeightedMultisetFamily>().unwrap(), fam);
        assert!("wmsfam 2 2 3\n1 1\n3 0 1\n"
            .parse::<WeightedMultisetFamily>()
            .is_err());
        assert!("wmsfam 2 2\n".parse::<WeightedMultisetFamily>().is_err());
    }
}
