//! Small enumeration helpers shared by builders and verifiers.

/// Lexicographic iterator over the `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        k,
        cur: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    k: usize,
    cur: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.take()?;
        let mut next = out.clone();
        let (n, k) = (self.n, self.k);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Subsets of `pool` with at most `max` elements, ordered by size and then
/// lexicographically.
pub fn subsets_up_to(pool: &[usize], max: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..=max.min(pool.len())).flat_map(move |size| {
        combinations(pool.len(), size).map(move |ix| ix.iter().map(|&i| pool[i]).collect())
    })
}

/// Weak compositions `(k_1..k_t)` with `sum <= total`, in lexicographic order.
pub fn bounded_compositions(t: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(t: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == t {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(t, left - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, total, &mut Vec::with_capacity(t), &mut out);
    out
}

/// Every tuple in `[sides_0] x ... x [sides_{t-1}]`, lexicographic, 0-based.
pub fn product(sides: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut cur = if sides.iter().all(|&s| s > 0) {
        Some(vec![0usize; sides.len()])
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = sides.len();
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] + 1 < sides[i] {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::binomial;

    #[test]
    fn combination_counts() {
        for n in 0..8 {
            for k in 0..=n + 1 {
                let all: Vec<_> = combinations(n, k).collect();
                assert_eq!(all.len() as u128, binomial(n as u64, k as u64));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn compositions_are_lexicographic_and_complete() {
        let c = bounded_compositions(2, 2);
        assert_eq!(
            c,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0]
            ]
        );
        // C(total + t, t) compositions of at most `total` into t parts.
        assert_eq!(bounded_compositions(3, 4).len() as u128, binomial(7, 3));
    }

    #[test]
    fn product_enumerates_grid() {
        let pts: Vec<_> = product(&[2, 3]).collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![0, 0]);
        assert_eq!(pts[5], vec![1, 2]);
        assert_eq!(product(&[2, 0]).count(), 0);
        assert_eq!(product(&[]).count(), 1);
    }

    #[test]
    fn bounded_subsets() {
        let s: Vec<_> = subsets_up_to(&[3, 5, 7], 2).collect();
        assert_eq!(s.len(), 7);
        assert_eq!(s[0], Vec::<usize>::new());
        assert_eq!(s[6], vec![5, 7]);
    }
}
