//! Family-size sweeps over `(n, r, k)` grids.
//!
//! Each grid point reports the multiset separator size and the size of the
//! representative family computed for one fixed input: every plain subset of
//! `[n]` of size `floor(k/2)`, with element weights `1 + (7i mod 5)`. The
//! input does not depend on `r`, so representative sizes are comparable
//! across `r`.

use serde::Serialize;

use crate::combinatorics::combinations;
use crate::error::{param, Result};
use crate::multiset::{MultisetVector, WeightedUniverse};
use crate::repset::{cached_separator, compute_representative, WeightedMultisetFamily};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub r: u32,
    pub k: u32,
    pub separator_size: usize,
    /// Separator members generated before deduplication.
    pub generated: u128,
    pub input_size: usize,
    pub representative_size: usize,
    /// `log2` of `r^(6k/r) * 2^(c*k/r) * log2(n)` at the fitted `c`.
    pub formula_log2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares fit of `c` against `log2` separator sizes.
    pub fitted_c: f64,
    /// True when representative sizes never grow with `r` for fixed `(n, k)`,
    /// ignoring points with `k > n*r`.
    pub monotone_in_r: bool,
    /// Grid points `(n, k, r)` where the size grew from the previous `r`.
    pub violations: Vec<(usize, u32, u32)>,
}

fn formula_parts(n: usize, r: u32, k: u32) -> (f64, f64) {
    let ratio = f64::from(k) / f64::from(r);
    let fixed = 6.0 * ratio * f64::from(r).log2() + (n as f64).log2().log2();
    (fixed, ratio)
}

fn probe_family(n: usize, r: u32, k: u32) -> Result<WeightedMultisetFamily> {
    let weights = (0..n as i64).map(|i| 1 + (7 * i) % 5).collect();
    let mut fam = WeightedMultisetFamily::new(WeightedUniverse::new(weights), r, k)?;
    for s in combinations(n, (k / 2) as usize) {
        fam.push(MultisetVector::indicator(n, r, &s)?)?;
    }
    Ok(fam)
}

/// Sweeps every `(n, r, k)` with `r <= k`. Needs `n >= 2` so that `log log n` is defined.
pub fn run_bench(ns: &[usize], rs: &[u32], ks: &[u32]) -> Result<BenchReport> {
    if ns.iter().any(|&n| n < 2) || rs.contains(&0) || ks.contains(&0) {
        return Err(param("bench needs n >= 2, r >= 1 and k >= 1"));
    }
    let mut rows = Vec::new();
    for &n in ns {
        for &k in ks {
            for &r in rs.iter().filter(|&&r| r <= k) {
                let sep = cached_separator(n, r, k)?;
                let fam = probe_family(n, r, k)?;
                let rep = compute_representative(&fam)?;
                rows.push(BenchRow {
                    n,
                    r,
                    k,
                    separator_size: sep.len(),
                    generated: sep.generated(),
                    input_size: fam.len(),
                    representative_size: rep.len(),
                    formula_log2: 0.0,
                });
            }
        }
    }
    let (mut num, mut den) = (0.0, 0.0);
    for row in rows.iter().filter(|row| row.separator_size > 0) {
        let (fixed, slope) = formula_parts(row.n, row.r, row.k);
        num += slope * ((row.separator_size as f64).log2() - fixed);
        den += slope * slope;
    }
    let fitted_c = if den > 0.0 { num / den } else { 0.0 };
    for row in &mut rows {
        let (fixed, slope) = formula_parts(row.n, row.r, row.k);
        row.formula_log2 = fixed + fitted_c * slope;
    }
    // Points with k > n*r have no r-set of size k, so their empty
    // representatives are left out of the comparison.
    let mut violations = Vec::new();
    let feasible: Vec<&BenchRow> = rows
        .iter()
        .filter(|row| row.k as usize <= row.n * row.r as usize)
        .collect();
    for pair in feasible.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.n == b.n && a.k == b.k && b.representative_size > a.representative_size {
            violations.push((b.n, b.k, b.r));
        }
    }
    Ok(BenchReport {
        rows,
        fitted_c,
        monotone_in_r: violations.is_empty(),
        violations,
    })
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut out = String::from("n r k separator generated input representative formula_log2\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{} {} {} {} {} {} {} {:.3}\n",
                row.n,
                row.r,
                row.k,
                row.separator_size,
                row.generated,
                row.input_size,
                row.representative_size,
                row.formula_log2
            ));
        }
        out.push_str(&format!("fitted c = {:.4}\n", self.fitted_c));
        out.push_str(&format!(
            "representative size non-increasing in r: {}\n",
            if self.monotone_in_r { "yes" } else { "no" }
        ));
        for (n, k, r) in &self.violations {
            out.push_str(&format!("  grows at n={n} k={k} r={r}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let rep = run_bench(&[4], &[1, 2, 3, 4], &[2, 4]).unwrap();
        assert_eq!(rep.rows.len(), 2 + 4);
        assert!(rep.fitted_c.is_finite());
        // Once r >= k only the lightest member of each size survives.
        let last = rep.rows.last().unwrap();
        assert_eq!((last.r, last.representative_size), (4, 1));
        assert!(rep.to_text().contains("fitted c"));
        assert!(run_bench(&[1], &[1], &[1]).is_err());
    }
}
