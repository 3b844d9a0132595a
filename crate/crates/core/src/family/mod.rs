//! Explicit function families and the desk-scale providers behind them.
//!
//! Each builder returns a [`FunctionFamily`] whose defining property can be
//! checked exhaustively with [`verify_family`]. The constructions favour
//! determinism and verifiability over asymptotic size.

mod gf;
mod hitting;
mod pairwise;
mod perfect;
mod property;

use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error, ParseError, Result};

pub use gf::{is_prime, prime_power, GaloisField};
pub use hitting::{
    build_rectangle_hitting_set, build_rectangle_hitting_set_with, verify_hitting_set, Density,
    RectanglePointSet, ThresholdProduct, UniformHittingProvider,
};
pub use pairwise::{build_one_vs_many_separator, build_pairwise_independent};
pub use perfect::{build_perfect_hash, build_perfect_hash_small_range, greedy_perfect_hash};
pub use property::{verify_family, FamilyProperty};

/// Which construction produced a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Identity,
    Constant,
    GreedyPerfectHash,
    AffineField { q: u32 },
    AffinePrime { q: u32 },
    MinimalSeparating,
    Parsed,
    Explicit,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Identity => f.write_str("identity"),
            Provenance::Constant => f.write_str("constant"),
            Provenance::GreedyPerfectHash => f.write_str("greedy-perfect-hash"),
            Provenance::AffineField { q } => write!(f, "affine-gf({q})"),
            Provenance::AffinePrime { q } => write!(f, "affine-mod-{q}"),
            Provenance::MinimalSeparating => f.write_str("minimal-separating"),
            Provenance::Parsed => f.write_str("parsed"),
            Provenance::Explicit => f.write_str("explicit"),
        }
    }
}

/// A list of total functions `[n] -> [s]`, each stored as a table of values in `1..=s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionFamily {
    domain: usize,
    range: usize,
    tables: Vec<Vec<u32>>,
    provenance: Provenance,
}

impl FunctionFamily {
    pub fn new(
        domain: usize,
        range: usize,
        tables: Vec<Vec<u32>>,
        provenance: Provenance,
    ) -> Result<Self> {
        for (idx, t) in tables.iter().enumerate() {
            if t.len() != domain {
                return Err(param(format!(
                    "function {idx} has {} entries, domain size is {domain}",
                    t.len()
                )));
            }
            if let Some(v) = t.iter().find(|&&v| v == 0 || v as usize > range) {
                return Err(param(format!(
                    "function {idx} takes value {v} outside 1..={range}"
                )));
            }
        }
        Ok(FunctionFamily {
            domain,
            range,
            tables,
            provenance,
        })
    }

    /// The embedding `x -> x` of `[n]` into `[s]`, `s >= n`.
    pub fn identity(n: usize, s: usize) -> Self {
        assert!(s >= n);
        FunctionFamily {
            domain: n,
            range: s,
            tables: vec![(1..=n as u32).collect()],
            provenance: Provenance::Identity,
        }
    }

    pub fn constant(n: usize, s: usize) -> Self {
        FunctionFamily {
            domain: n,
            range: s,
            tables: vec![vec![1; n]],
            provenance: Provenance::Constant,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.domain
    }

    pub fn range_size(&self) -> usize {
        self.range
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn tables(&self) -> &[Vec<u32>] {
        &self.tables
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub(crate) fn into_tables(self) -> Vec<Vec<u32>> {
        self.tables
    }

    /// Line-based text form: a header then one function per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "family n={} s={} count={}\n",
            self.domain,
            self.range,
            self.tables.len()
        );
        for t in &self.tables {
            let line: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for FunctionFamily {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
        let fields = parse_header(header, "family", &["n", "s", "count"], 1)?;
        let (n, s, count) = (fields[0], fields[1], fields[2]);
        let mut tables = Vec::with_capacity(count);
        for (idx, line) in lines {
            if tables.len() == count {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(syntax(idx + 1, 1, "more functions than announced").into());
            }
            let row = parse_u32_row(line, idx + 1)?;
            tables.push(row);
        }
        if tables.len() != count {
            return Err(syntax(
                text.lines().count() + 1,
                1,
                "fewer functions than announced",
            )
            .into());
        }
        FunctionFamily::new(n, s, tables, Provenance::Parsed)
    }
}

pub(crate) fn syntax(line: usize, column: usize, message: &str) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

/// Parses `tag key=value ...` with the given keys in order.
pub(crate) fn parse_header(
    line: &str,
    tag: &str,
    keys: &[&str],
    lineno: usize,
) -> Result<Vec<usize>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(syntax(lineno, 1, &format!("expected `{tag}` header")).into());
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let part = parts
            .next()
            .ok_or_else(|| syntax(lineno, line.len() + 1, &format!("missing `{key}=`")))?;
        let value = part
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| {
                let col = line.find(part).unwrap_or(0) + 1;
                syntax(lineno, col, &format!("expected `{key}=<integer>`"))
            })?;
        values.push(value);
    }
    if let Some(extra) = parts.next() {
        let col = line.find(extra).unwrap_or(0) + 1;
        return Err(syntax(lineno, col, "unexpected trailing field").into());
    }
    Ok(values)
}

pub(crate) fn parse_u32_row(line: &str, lineno: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            col += 1;
            continue;
        }
        let v = tok
            .parse::<u32>()
            .map_err(|_| syntax(lineno, col, &format!("expected integer, found `{tok}`")))?;
        out.push(v);
        col += tok.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let fam = FunctionFamily::new(
            4,
            2,
            vec![vec![1, 2, 1, 2], vec![1, 1, 2, 2], vec![1, 2, 2, 1]],
            Provenance::Explicit,
        )
        .unwrap();
        let text = fam.to_text();
        assert_eq!(text, "family n=4 s=2 count=3\n1 2 1 2\n1 1 2 2\n1 2 2 1\n");
        let back: FunctionFamily = text.parse().unwrap();
        assert_eq!(back.tables(), fam.tables());
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FunctionFamily::new(2, 2, vec![vec![1, 3]], Provenance::Explicit).is_err());
        assert!(FunctionFamily::new(2, 2, vec![vec![1]], Provenance::Explicit).is_err());
        assert!(FunctionFamily::new(2, 2, vec![vec![0, 1]], Provenance::Explicit).is_err());
        assert!("family n=2 s=2 count=2\n1 2\n"
            .parse::<FunctionFamily>()
            .is_err());
        assert!("family n=2 s=2\n".parse::<FunctionFamily>().is_err());
        assert!("fam n=2 s=2 count=0\n".parse::<FunctionFamily>().is_err());
    }
}
