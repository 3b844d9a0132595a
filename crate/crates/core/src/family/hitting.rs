//! Hitting sets for combinatorial rectangles.
//!
//! Sidewise density 1/2 on mixed side sizes is obtained by default from a
//! uniform-side hitting set for density 1/3 over `[3m]^t` by reducing each
//! coordinate modulo its side size. The uniform-side construction is a plug-in.

use std::collections::BTreeSet;

use crate::budget::{binomial, Budget};
use crate::combinatorics::{combinations, product};
use crate::error::{param, Result};
use crate::verify::{Counterexample, Verdict};

/// A rational sidewise density `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Density {
    pub num: u32,
    pub den: u32,
}

impl Density {
    pub const HALF: Density = Density { num: 1, den: 2 };
    pub const THIRD: Density = Density { num: 1, den: 3 };
    pub const FULL: Density = Density { num: 1, den: 1 };

    /// Smallest admissible side `|R_i|` for a side of size `m`.
    pub fn min_side(self, m: usize) -> usize {
        (self.num as usize * m).div_ceil(self.den as usize)
    }

    fn normalized(self) -> (u32, u32) {
        let g = gcd(self.num, self.den);
        (self.num / g.max(1), self.den / g.max(1))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Points in `[m_1] x ... x [m_t]`, coordinates 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectanglePointSet {
    pub sides: Vec<usize>,
    pub points: Vec<Vec<usize>>,
}

/// Source of hitting sets over a uniform grid `[m]^t`.
pub trait UniformHittingProvider {
    fn build(&self, m: usize, t: usize, density: Density) -> Result<Vec<Vec<usize>>>;

    /// Density 1/2 over mixed side sizes, by lifting to `[3m]^t` at density
    /// 1/3 and reducing each coordinate modulo its side.
    fn build_half_mixed(&self, sides: &[usize]) -> Result<Vec<Vec<usize>>> {
        let m = *sides.iter().max().expect("nonempty");
        let lifted = self.build(3 * m, sides.len(), Density::THIRD)?;
        let projected: BTreeSet<Vec<usize>> = lifted
            .into_iter()
            .map(|p| p.iter().zip(sides).map(|(&a, &mi)| a % mi).collect())
            .collect();
        Ok(projected.into_iter().collect())
    }
}

/// `S^t` with `S` the first `m - ceil(density*m) + 1` values: every admissible
/// side meets `S`, so every admissible rectangle meets `S^t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThresholdProduct;

impl UniformHittingProvider for ThresholdProduct {
    fn build(&self, m: usize, t: usize, density: Density) -> Result<Vec<Vec<usize>>> {
        threshold_product(&vec![m; t], density)
    }

    /// The threshold product works on mixed sides directly, and is far
    /// smaller than the projection of a lifted grid.
    fn build_half_mixed(&self, sides: &[usize]) -> Result<Vec<Vec<usize>>> {
        threshold_product(sides, Density::HALF)
    }
}

fn threshold_product(sides: &[usize], density: Density) -> Result<Vec<Vec<usize>>> {
    let keep: Vec<usize> = sides
        .iter()
        .map(|&m| m + 1 - density.min_side(m).max(1))
        .collect();
    let total = keep
        .iter()
        .fold(1u128, |acc, &k| acc.saturating_mul(k as u128));
    Budget::default().check("threshold product hitting set", total)?;
    Ok(product(&keep).collect())
}

pub fn build_rectangle_hitting_set(sides: &[usize], density: Density) -> Result<RectanglePointSet> {
    build_rectangle_hitting_set_with(&ThresholdProduct, sides, density)
}

pub fn build_rectangle_hitting_set_with(
    provider: &dyn UniformHittingProvider,
    sides: &[usize],
    density: Density,
) -> Result<RectanglePointSet> {
    if sides.is_empty() {
        return Err(param("rectangle needs at least one side"));
    }
    if sides.contains(&0) {
        return Err(param("side sizes must be positive"));
    }
    let t = sides.len();
    let points = match density.normalized() {
        (1, 2) => provider.build_half_mixed(sides)?,
        (1, 3) | (1, 1) => {
            if sides.iter().all(|&s| s == sides[0]) {
                provider.build(sides[0], t, density)?
            } else {
                threshold_product(sides, density)?
            }
        }
        _ => {
            return Err(param(format!(
                "unsupported density {}/{}; expected 1/3, 1/2 or 1",
                density.num, density.den
            )))
        }
    };
    Ok(RectanglePointSet {
        sides: sides.to_vec(),
        points,
    })
}

/// Checks that every rectangle of the given sidewise density contains a point.
///
/// Only minimal rectangles (each side of exactly the admissible size) are
/// enumerated; larger rectangles contain one of them.
pub fn verify_hitting_set(
    set: &RectanglePointSet,
    density: Density,
    budget: Budget,
) -> Result<Verdict> {
    let mins: Vec<usize> = set
        .sides
        .iter()
        .map(|&m| density.min_side(m).max(1))
        .collect();
    let rects = set.sides.iter().zip(&mins).fold(1u128, |acc, (&m, &c)| {
        acc.saturating_mul(binomial(m as u64, c as u64))
    });
    budget.check(
        "rectangle hitting-set verification",
        rects.saturating_mul(set.points.len().max(1) as u128),
    )?;
    if let Some(p) = set
        .points
        .iter()
        .find(|p| p.len() != set.sides.len() || p.iter().zip(&set.sides).any(|(&a, &m)| a >= m))
    {
        return Err(param(format!("point {p:?} lies outside the grid")));
    }
    let choices: Vec<Vec<Vec<usize>>> = set
        .sides
        .iter()
        .zip(&mins)
        .map(|(&m, &c)| combinations(m, c).collect())
        .collect();
    let counts: Vec<usize> = choices.iter().map(|c| c.len()).collect();
    for pick in product(&counts) {
        let rect: Vec<&Vec<usize>> = pick
            .iter()
            .enumerate()
            .map(|(i, &j)| &choices[i][j])
            .collect();
        let hit = set.points.iter().any(|p| {
            p.iter()
                .zip(&rect)
                .all(|(a, side)| side.binary_search(a).is_ok())
        });
        if !hit {
            return Ok(Verdict::Violated(Counterexample::Rectangle(
                rect.into_iter().cloned().collect(),
            )));
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hits(set: &RectanglePointSet, d: Density) -> bool {
        verify_hitting_set(set, d, Budget::default())
            .unwrap()
            .holds()
    }

    #[test]
    fn two_by_two_needs_every_point() {
        let h = build_rectangle_hitting_set(&[2, 2], Density::HALF).unwrap();
        assert_eq!(h.points.len(), 4);
        assert!(hits(&h, Density::HALF));
        // Dropping any point leaves a singleton rectangle uncovered.
        for skip in 0..4 {
            let mut smaller = h.clone();
            smaller.points.remove(skip);
            assert!(!hits(&smaller, Density::HALF));
        }
    }

    #[test]
    fn single_side_of_four() {
        let h = build_rectangle_hitting_set(&[4], Density::HALF).unwrap();
        assert!(h.points.len() >= 3);
        assert!(hits(&h, Density::HALF));
        let two = RectanglePointSet {
            sides: vec![4],
            points: vec![vec![0], vec![1]],
        };
        assert_eq!(
            verify_hitting_set(&two, Density::HALF, Budget::default()).unwrap(),
            Verdict::Violated(Counterexample::Rectangle(vec![vec![2, 3]]))
        );
    }

    #[test]
    fn full_density_needs_one_point() {
        let h = build_rectangle_hitting_set(&[3, 3], Density::FULL).unwrap();
        assert_eq!(h.points.len(), 1);
        assert!(hits(&h, Density::FULL));
    }

    #[test]
    fn mixed_sides_stay_in_range() {
        for sides in [vec![1, 5, 3], vec![4, 2], vec![6], vec![2, 3, 2, 1]] {
            let h = build_rectangle_hitting_set(&sides, Density::HALF).unwrap();
            assert!(h
                .points
                .iter()
                .all(|p| p.iter().zip(&sides).all(|(&a, &m)| a < m)));
            assert!(hits(&h, Density::HALF), "{sides:?}");
        }
    }

    /// Uses the lifting route for mixed sides.
    struct Lifting;

    impl UniformHittingProvider for Lifting {
        fn build(&self, m: usize, t: usize, density: Density) -> Result<Vec<Vec<usize>>> {
            ThresholdProduct.build(m, t, density)
        }
    }

    #[test]
    fn lifted_mixed_sides() {
        for sides in [vec![1, 5, 3], vec![4, 2]] {
            let h = build_rectangle_hitting_set_with(&Lifting, &sides, Density::HALF).unwrap();
            assert!(hits(&h, Density::HALF), "{sides:?}");
        }
    }

    #[test]
    fn unsupported_density() {
        assert!(build_rectangle_hitting_set(&[3], Density { num: 2, den: 3 }).is_err());
        assert!(build_rectangle_hitting_set(&[], Density::HALF).is_err());
    }

    #[test]
    fn uniform_third() {
        let h = build_rectangle_hitting_set(&[6, 6], Density::THIRD).unwrap();
        assert!(hits(&h, Density::THIRD));
    }
}
