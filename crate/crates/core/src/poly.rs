//! Sparse multivariate integer polynomials, optionally truncated.
//!
//! With caps `(r, k)` every monomial with some exponent above `r` or total
//! degree above `k` is dropped. Both conditions generate monomial ideals, so
//! truncating after each operation gives the same result as truncating once
//! at the end.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Per-variable and total degree caps; `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Caps {
    pub r: Option<u32>,
    pub k: Option<u32>,
}

impl Caps {
    pub const NONE: Caps = Caps { r: None, k: None };

    pub fn new(r: u32, k: u32) -> Self {
        Caps {
            r: Some(r),
            k: Some(k),
        }
    }

    pub fn admits(&self, exps: &[u32]) -> bool {
        self.r.is_none_or(|r| exps.iter().all(|&e| e <= r))
            && self.k.is_none_or(|k| exps.iter().sum::<u32>() <= k)
    }
}

/// Exponent vectors map to nonzero coefficients; keys are ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPolynomial {
    nvars: usize,
    caps: Caps,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl TruncatedPolynomial {
    pub fn zero(nvars: usize, caps: Caps) -> Self {
        TruncatedPolynomial {
            nvars,
            caps,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, caps: Caps, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, caps, vec![0; nvars], c)
    }

    pub fn one(nvars: usize, caps: Caps) -> Self {
        Self::constant(nvars, caps, 1)
    }

    /// `x_i`, 0-based.
    pub fn variable(nvars: usize, caps: Caps, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, caps, exps, 1)
    }

    /// `c * x^exps`, or zero when the monomial is outside the caps.
    pub fn monomial(nvars: usize, caps: Caps, exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars, caps);
        p.accumulate(exps, c.into());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    /// Number of stored terms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms
            .iter()
            .filter(move |(e, _)| e.iter().sum::<u32>() == d)
    }

    fn accumulate(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() || !self.caps.admits(&exps) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable sets"
        );
    }

    /// Reapplies truncation with new caps.
    pub fn truncate(&self, caps: Caps) -> Self {
        let mut out = Self::zero(self.nvars, caps);
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars, self.caps);
        for (e, x) in &self.terms {
            out.accumulate(e.clone(), x * c);
        }
        out
    }

    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&d, x)| {
                    acc * num_traits::pow(x.clone(), d as usize)
                })
            })
            .sum()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Formats with caller-chosen variable names.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mag = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| {
                    if d == 1 {
                        name(i)
                    } else {
                        format!("{}^{d}", name(i))
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for TruncatedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|i| format!("x{}", i + 1)))
    }
}

impl Add for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn add(self, other: &TruncatedPolynomial) -> TruncatedPolynomial {
        self.check_shape(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn sub(self, other: &TruncatedPolynomial) -> TruncatedPolynomial {
        self.check_shape(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), -c);
        }
        out
    }
}

impl Neg for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn neg(self) -> TruncatedPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    // Exponents add when terms multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: &TruncatedPolynomial) -> TruncatedPolynomial {
        self.check_shape(other);
        let mut out = TruncatedPolynomial::zero(self.nvars, self.caps);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if out.caps.admits(&e) {
                    out.accumulate(e, ca * cb);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, caps: Caps) -> TruncatedPolynomial {
        TruncatedPolynomial::variable(2, caps, i)
    }

    #[test]
    fn square_of_sum() {
        let s = &x(0, Caps::NONE) + &x(1, Caps::NONE);
        let sq = &s * &s;
        assert_eq!(sq.to_string(), "x2^2 + 2*x1*x2 + x1^2");
        assert_eq!(sq.coefficient(&[1, 1]), BigInt::from(2));

        let caps = Caps::new(1, 2);
        let s = &x(0, caps) + &x(1, caps);
        assert_eq!((&s * &s).to_string(), "2*x1*x2");
        assert_eq!(sq.truncate(caps), &s * &s);
    }

    #[test]
    fn subtraction_cancels() {
        let a = &x(0, Caps::NONE) + &x(1, Caps::NONE);
        assert!((&a - &a).is_zero());
        let d = &x(0, Caps::NONE) - &x(1, Caps::NONE);
        assert_eq!(d.to_string(), "-x2 + x1");
        assert_eq!((-&d).to_string(), "x2 - x1");
    }

    #[test]
    fn evaluation() {
        let s = &x(0, Caps::NONE) + &x(1, Caps::NONE);
        let sq = &s * &s;
        assert_eq!(
            sq.evaluate(&[BigInt::from(1), BigInt::from(2)]),
            BigInt::from(9)
        );
        let c = TruncatedPolynomial::constant(2, Caps::NONE, 7);
        assert_eq!(c.to_string(), "7");
        assert_eq!(TruncatedPolynomial::zero(1, Caps::NONE).to_string(), "0");
    }

    #[test]
    fn caps_drop_terms() {
        let caps = Caps {
            r: Some(1),
            k: None,
        };
        let sq = &x(0, caps) * &x(0, caps);
        assert!(sq.is_zero());
        let caps = Caps {
            r: None,
            k: Some(1),
        };
        assert!((&x(0, caps) * &x(1, caps)).is_zero());
    }
}
