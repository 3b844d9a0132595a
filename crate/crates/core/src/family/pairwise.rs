//! Almost pairwise independent families and the one-vs-many separators built from them.

use super::gf::{is_prime, prime_power, GaloisField};
use super::{FunctionFamily, Provenance};
use crate::error::{param, Result};

/// Largest field order tried before giving up on an `eps` target.
const MAX_FIELD: u32 = 4096;

/// An `eps`-pairwise independent family `[n] -> [m]`.
///
/// Members are the affine maps `x -> a*x + b` over a field of order `q >= n`,
/// composed with a projection onto `[m]`. When `m` is a prime power the field
/// has the same characteristic, fibres of the projection have equal size and
/// the family is exactly pairwise independent. Otherwise `q` is the smallest
/// prime whose `mod m` projection keeps the deviation within `eps`.
pub fn build_pairwise_independent(n: usize, m: usize, eps: f64) -> Result<FunctionFamily> {
    if m == 0 || m > n {
        return Err(param(format!(
            "pairwise family needs 1 <= m <= n, got m={m}, n={n}"
        )));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(param("eps must be non-negative"));
    }
    let (n32, m32) = (n as u32, m as u32);
    if m == 1 {
        return Ok(FunctionFamily::constant(n, 1));
    }

    if let Some((p, j)) = prime_power(m32) {
        let mut e = j;
        while p.pow(e) < n32 {
            e += 1;
        }
        let field = GaloisField::new(p, e)
            .ok_or_else(|| param(format!("field GF({p}^{e}) is too large for desk scale")))?;
        let q = field.order();
        let mut tables = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                tables.push(
                    (0..n32)
                        .map(|x| field.add(field.mul(a, x), b) % m32 + 1)
                        .collect(),
                );
            }
        }
        return FunctionFamily::new(n, m, tables, Provenance::AffineField { q });
    }

    let mut q = n32.max(m32);
    loop {
        if q > MAX_FIELD {
            return Err(param(format!(
                "no prime field up to {MAX_FIELD} reaches eps={eps} for m={m}"
            )));
        }
        if is_prime(q) && projection_deviation(q, m32) <= eps + 1e-12 {
            break;
        }
        q += 1;
    }
    let mut tables = Vec::with_capacity((q * q) as usize);
    for a in 0..q {
        for b in 0..q {
            tables.push((0..n32).map(|x| (a * x + b) % q % m32 + 1).collect());
        }
    }
    FunctionFamily::new(n, m, tables, Provenance::AffinePrime { q })
}

/// Worst `|Pr[f(x)=a, f(y)=b] - 1/m^2|` for the affine family mod `q` projected mod `m`.
fn projection_deviation(q: u32, m: u32) -> f64 {
    let fibres: Vec<f64> = (0..m).map(|a| ((q - a).div_ceil(m)) as f64).collect();
    let target = 1.0 / (m as f64 * m as f64);
    let q2 = q as f64 * q as f64;
    fibres
        .iter()
        .flat_map(|&sa| fibres.iter().map(move |&sb| (sa * sb / q2 - target).abs()))
        .fold(0.0, f64::max)
}

/// A family `[n] -> [4k]` in which, for every `a` and every `D` with
/// `|D| <= k` and `a` not in `D`, at least half the members keep `h(a)` out of `h(D)`.
///
/// When `4k >= n` the injective embedding alone does this. Otherwise the
/// family is the `1/(4k)^2`-pairwise independent family: each `b` in `D`
/// collides with `a` with probability at most `1/(2k)`, so by Markov at least
/// half the members separate.
pub fn build_one_vs_many_separator(n: usize, k: usize) -> Result<FunctionFamily> {
    if k == 0 || k > n {
        return Err(param(format!(
            "one-vs-many separator needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let m = 4 * k;
    if m >= n {
        return Ok(FunctionFamily::identity(n, m));
    }
    let eps = 1.0 / (m as f64 * m as f64);
    build_pairwise_independent(n, m, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{verify_family, FamilyProperty};
    use crate::Budget;

    fn pairwise(fam: &FunctionFamily, eps: f64) -> bool {
        verify_family(fam, &FamilyProperty::Pairwise { eps }, Budget::default())
            .unwrap()
            .holds()
    }

    #[test]
    fn affine_mod_three_is_exact() {
        let f = build_pairwise_independent(3, 3, 0.0).unwrap();
        assert_eq!(f.len(), 9);
        assert!(pairwise(&f, 0.0));
    }

    #[test]
    fn two_by_two_is_full_function_space() {
        let f = build_pairwise_independent(2, 2, 0.25).unwrap();
        let mut tables = f.tables().to_vec();
        tables.sort();
        assert_eq!(tables, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert!(pairwise(&f, 0.0));
    }

    #[test]
    fn gf4_projection_is_exact() {
        let f = build_pairwise_independent(4, 2, 0.0).unwrap();
        assert_eq!(f.provenance(), &Provenance::AffineField { q: 4 });
        assert!(pairwise(&f, 0.0));
    }

    #[test]
    fn non_prime_power_range_meets_eps() {
        let eps = 1.0 / 36.0;
        let f = build_pairwise_independent(7, 6, eps).unwrap();
        assert!(pairwise(&f, eps));
        assert!(build_pairwise_independent(7, 6, 0.0).is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(build_pairwise_independent(2, 3, 0.1).is_err());
        assert!(build_one_vs_many_separator(3, 4).is_err());
        assert!(build_one_vs_many_separator(3, 0).is_err());
    }

    fn half_separates(fam: &FunctionFamily, max_others: usize) -> bool {
        verify_family(
            fam,
            &FamilyProperty::OneVsMany { max_others },
            Budget::default(),
        )
        .unwrap()
        .holds()
    }

    #[test]
    fn one_vs_many_examples() {
        let f = build_one_vs_many_separator(2, 1).unwrap();
        assert!(!f.is_empty());
        assert!(half_separates(&f, 0));
        assert!(half_separates(
            &build_one_vs_many_separator(4, 2).unwrap(),
            2
        ));
        assert!(half_separates(
            &build_one_vs_many_separator(3, 3).unwrap(),
            2
        ));
    }

    #[test]
    fn pairwise_route_separates_k_others() {
        for (n, k) in [(5, 1), (8, 1), (9, 2), (13, 3)] {
            let f = build_one_vs_many_separator(n, k).unwrap();
            assert!(f.len() > 1, "expected the pairwise route for n={n}, k={k}");
            assert!(half_separates(&f, k), "n={n} k={k}");
        }
    }
}
