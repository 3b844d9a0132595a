//! Bounded multisets over the universe `[n]`.
//!
//! A [`MultisetVector`] is an r-set: a vector in `{0..r}^n`. Counts are packed
//! into 64-bit words, one lane of `bits(r) + 1` bits per element. The top bit
//! of every lane is a guard bit that is always zero in a stored vector, which
//! lets `A <= F` and `A + B` run word-at-a-time.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{dim, param, Result};

type Words = SmallVec<[u64; 2]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Layout {
    width: u32,
    lanes: u32,
}

impl Layout {
    fn for_cap(r: u32) -> Self {
        let bits = 32 - r.leading_zeros();
        let width = bits + 1;
        Layout {
            width,
            lanes: 64 / width,
        }
    }

    fn words(self, n: u32) -> usize {
        n.div_ceil(self.lanes) as usize
    }

    fn lane_mask(self) -> u64 {
        (1u64 << self.width) - 1
    }

    /// `value` repeated in the first `count` lanes.
    fn fill(self, value: u64, count: u32) -> u64 {
        let mut w = 0u64;
        for lane in 0..count {
            w |= value << (lane * self.width);
        }
        w
    }

    fn guard(self, count: u32) -> u64 {
        self.fill(1u64 << (self.width - 1), count)
    }

    fn lanes_in_word(self, n: u32, word: usize) -> u32 {
        let start = word as u32 * self.lanes;
        (n - start).min(self.lanes)
    }
}

/// An r-set over `[n]`, stored as packed multiplicities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultisetVector {
    n: u32,
    r: u32,
    size: u32,
    words: Words,
}

impl MultisetVector {
    /// Builds an r-set from explicit multiplicities; every count must be at most `r`.
    pub fn new(r: u32, counts: &[u32]) -> Result<Self> {
        if r == 0 {
            return Err(param("multiplicity cap r must be positive"));
        }
        if let Some((i, &c)) = counts.iter().enumerate().find(|(_, &c)| c > r) {
            return Err(param(format!(
                "element {} has multiplicity {c}, cap is {r}",
                i + 1
            )));
        }
        let n = u32::try_from(counts.len()).map_err(|_| param("universe too large"))?;
        let layout = Layout::for_cap(r);
        let mut words: Words = SmallVec::from_elem(0, layout.words(n));
        let mut size = 0u32;
        for (i, &c) in counts.iter().enumerate() {
            let i = i as u32;
            let (w, lane) = ((i / layout.lanes) as usize, i % layout.lanes);
            words[w] |= u64::from(c) << (lane * layout.width);
            size += c;
        }
        Ok(MultisetVector { n, r, size, words })
    }

    pub fn zeros(n: usize, r: u32) -> Result<Self> {
        Self::new(r, &vec![0; n])
    }

    /// The 0/1 indicator of `elements` (0-based) over `[n]`.
    pub fn indicator(n: usize, r: u32, elements: &[usize]) -> Result<Self> {
        let mut counts = vec![0u32; n];
        for &e in elements {
            let slot = counts
                .get_mut(e)
                .ok_or_else(|| dim(format!("element {} outside universe of size {n}", e + 1)))?;
            *slot += 1;
        }
        Self::new(r, &counts)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn cap(&self) -> u32 {
        self.r
    }

    /// `|A|`, the number of elements counted with multiplicity.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn get(&self, i: usize) -> u32 {
        assert!(i < self.n(), "index {i} out of range for n={}", self.n);
        let layout = Layout::for_cap(self.r);
        let i = i as u32;
        let w = self.words[(i / layout.lanes) as usize];
        ((w >> ((i % layout.lanes) * layout.width)) & layout.lane_mask()) as u32
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n()).map(move |i| self.get(i))
    }

    pub fn counts(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Elements (0-based) with nonzero multiplicity.
    pub fn support(&self) -> Vec<usize> {
        self.iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.r != other.r {
            return Err(dim(format!(
                "(n={}, r={}) vs (n={}, r={})",
                self.n, self.r, other.n, other.r
            )));
        }
        Ok(())
    }

    /// `r - A_i` in every coordinate.
    pub fn complement(&self) -> Self {
        let layout = Layout::for_cap(self.r);
        let words = self
            .words
            .iter()
            .enumerate()
            .map(|(w, &word)| {
                let lanes = layout.lanes_in_word(self.n, w);
                layout.fill(u64::from(self.r), lanes) - word
            })
            .collect();
        MultisetVector {
            n: self.n,
            r: self.r,
            size: self.n * self.r - self.size,
            words,
        }
    }

    /// Coordinate-wise `self <= other`.
    pub fn is_below(&self, other: &Self) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.fits_under(other))
    }

    /// Coordinate-wise `self <= other` without the shape check.
    #[inline]
    pub(crate) fn fits_under(&self, other: &Self) -> bool {
        debug_assert_eq!((self.n, self.r), (other.n, other.r));
        let layout = Layout::for_cap(self.r);
        let guard = layout.guard(layout.lanes);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &f)| ((f | guard) - a) & guard == guard)
    }

    /// Coordinate-wise `A_i + B_i <= r`.
    #[inline]
    pub(crate) fn sum_within_cap(&self, other: &Self) -> bool {
        let layout = Layout::for_cap(self.r);
        let guard = layout.guard(layout.lanes);
        self.words
            .iter()
            .zip(other.words.iter())
            .enumerate()
            .all(|(w, (&a, &b))| {
                let comp = layout.fill(u64::from(self.r), layout.lanes_in_word(self.n, w)) - a;
                ((comp | guard) - b) & guard == guard
            })
    }

    /// The union `A + B`; the result may exceed the cap and is then not an r-set.
    pub fn union(&self, other: &Self) -> Result<MultisetSum> {
        self.same_shape(other)?;
        Ok(MultisetSum {
            r: self.r,
            counts: self.iter().zip(other.iter()).map(|(a, b)| a + b).collect(),
        })
    }

    /// `A + B` is an r-set of size exactly `k`.
    pub fn is_rk_compatible(&self, other: &Self, k: u32) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.size + other.size == k && self.sum_within_cap(other))
    }

    /// `A + B` is an r-set of size at most `k`.
    pub fn is_rk_consistent(&self, other: &Self, k: u32) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.size + other.size <= k && self.sum_within_cap(other))
    }

    /// `A + B` when the pair is rk-consistent, otherwise `None`.
    pub fn add_consistent(&self, other: &Self, k: u32) -> Option<Self> {
        if self.n != other.n || self.r != other.r {
            return None;
        }
        if self.size + other.size > k || !self.sum_within_cap(other) {
            return None;
        }
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a + b)
            .collect();
        Some(MultisetVector {
            n: self.n,
            r: self.r,
            size: self.size + other.size,
            words,
        })
    }

    /// `A + {i}` when `|A| < k` and `A_i < r`, otherwise `None`.
    pub fn add_element(&self, i: usize, k: u32) -> Option<Self> {
        if i >= self.n() || self.size >= k || self.get(i) >= self.r {
            return None;
        }
        let layout = Layout::for_cap(self.r);
        let i = i as u32;
        let mut words = self.words.clone();
        words[(i / layout.lanes) as usize] += 1u64 << ((i % layout.lanes) * layout.width);
        Some(MultisetVector {
            n: self.n,
            r: self.r,
            size: self.size + 1,
            words,
        })
    }

    /// Drops coordinates `n'..n`.
    pub fn truncate(&self, n: usize) -> Self {
        let counts = self.counts();
        Self::new(self.r, &counts[..n.min(counts.len())]).expect("counts already within cap")
    }

    /// `wt(A) = sum_i A_i * wt(i)`.
    pub fn weight(&self, universe: &WeightedUniverse) -> Result<i64> {
        if universe.n() != self.n() {
            return Err(dim(format!(
                "multiset over n={} but universe has {} elements",
                self.n,
                universe.n()
            )));
        }
        Ok(self
            .iter()
            .zip(universe.weights())
            .map(|(c, &w)| i64::from(c) * w)
            .sum())
    }
}

impl Ord for MultisetVector {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.r)
            .cmp(&(other.n, other.r))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for MultisetVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultisetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/r={}", self.counts(), self.r)
    }
}

/// Space-separated counts.
impl fmt::Display for MultisetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Result of [`MultisetVector::union`]; flagged when some coordinate exceeds `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetSum {
    r: u32,
    counts: Vec<u32>,
}

impl MultisetSum {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn size(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_r_set(&self) -> bool {
        self.counts.iter().all(|&c| c <= self.r)
    }

    pub fn into_r_set(self) -> Option<MultisetVector> {
        if self.is_r_set() {
            MultisetVector::new(self.r, &self.counts).ok()
        } else {
            None
        }
    }
}

/// Integer weights on the elements of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedUniverse {
    weights: Vec<i64>,
}

impl WeightedUniverse {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightedUniverse { weights }
    }

    pub fn uniform(n: usize, weight: i64) -> Self {
        WeightedUniverse {
            weights: vec![weight; n],
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight_of(&self, i: usize) -> i64 {
        self.weights[i]
    }
}

/// Enumerates every vector in `{0..r}^n` in lexicographic order.
pub(crate) fn all_vectors(n: usize, r: u32) -> impl Iterator<Item = Vec<u32>> {
    let mut cur = Some(vec![0u32; n]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = n;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < r {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}
