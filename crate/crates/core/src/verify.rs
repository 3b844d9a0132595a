//! Outcome of the exhaustive property checkers.

use std::fmt;

use crate::multiset::MultisetVector;

/// Either the checked property holds, or a concrete witness of its failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(c) => Some(c),
        }
    }
}

/// Element indices in counterexamples are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    /// A set on which no member is injective.
    Subset(Vec<usize>),
    /// A pair statistic outside the allowed deviation.
    Pairwise {
        x: usize,
        y: usize,
        a: usize,
        b: usize,
    },
    /// Fewer than half the members separate `a` from `others`.
    OneVsMany { a: usize, others: Vec<usize> },
    /// A rectangle missed by every point; one side per coordinate.
    Rectangle(Vec<Vec<usize>>),
    /// A pair `(C, D)` no member separates.
    Separation { c: Vec<usize>, d: Vec<usize> },
    /// A pair `(A, B)` no member contains-and-avoids.
    Lopsided { a: Vec<usize>, b: Vec<usize> },
    /// An rk-compatible pair with no `F` between `A` and `comp(B)`.
    Multisets {
        a: MultisetVector,
        b: MultisetVector,
    },
    /// A test multiset for which the candidate family loses the optimum.
    Representative { q: MultisetVector },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |v: &[usize]| -> String {
            let items: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        };
        match self {
            Counterexample::Subset(c) => write!(f, "subset {}", one(c)),
            Counterexample::Pairwise { x, y, a, b } => {
                write!(
                    f,
                    "pair x={} y={} values ({}, {})",
                    x + 1,
                    y + 1,
                    a + 1,
                    b + 1
                )
            }
            Counterexample::OneVsMany { a, others } => {
                write!(f, "element {} vs {}", a + 1, one(others))
            }
            Counterexample::Rectangle(sides) => {
                let parts: Vec<String> = sides.iter().map(|s| one(s)).collect();
                write!(f, "rectangle {}", parts.join(" x "))
            }
            Counterexample::Separation { c, d } => write!(f, "C={} D={}", one(c), one(d)),
            Counterexample::Lopsided { a, b } => write!(f, "A={} B={}", one(a), one(b)),
            Counterexample::Multisets { a, b } => write!(f, "A=({a}) B=({b})"),
            Counterexample::Representative { q } => write!(f, "Q=({q})"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("true"),
            Verdict::Violated(c) => write!(f, "false {c}"),
        }
    }
}
