use crate::error::{Error, Result};

/// Environment variable that overrides the default verification budget.
pub const BUDGET_ENV: &str = "RELAXREP_VERIFY_BUDGET";

/// Upper bound on the number of cases an exhaustive routine may enumerate.
///
/// Exceeding the budget is always an error, never a silent pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(10_000_000)
    }
}

impl Budget {
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    pub fn check(self, what: &str, needed: u128) -> Result<()> {
        if needed > u128::from(self.0) {
            Err(Error::Budget {
                what: what.to_string(),
                needed,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `base^exp`, saturating.
pub fn saturating_pow(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(20, 10), 184_756);
    }

    #[test]
    fn refusal_is_an_error() {
        let b = Budget(10);
        assert!(b.check("x", 10).is_ok());
        assert!(matches!(b.check("x", 11), Err(Error::Budget { .. })));
    }
}
