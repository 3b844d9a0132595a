//! Table-driven arithmetic in small finite fields GF(p^e).
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of a polynomial reduced modulo a monic irreducible of degree `e`.

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl GaloisField {
    /// Builds GF(p^e). Returns `None` when `p` is not prime or `q` is too large for tables.
    pub fn new(p: u32, e: u32) -> Option<Self> {
        if !is_prime(p) || e == 0 {
            return None;
        }
        let q = p.checked_pow(e)?;
        if q > 4096 {
            return None;
        }
        let add = table(q, |a, b| digitwise(a, b, p, e));
        if e == 1 {
            let mul = table(q, |a, b| (a * b) % p);
            return Some(GaloisField { p, q, add, mul });
        }
        // Monic modulus: x^e + sum c_i x^i, tail coefficients encoded as `tail`.
        for tail in 0..q {
            let mul = table(q, |a, b| poly_mul_mod(a, b, tail, p, e));
            let is_field = (1..q).all(|a| (1..q).all(|b| mul[(a * q + b) as usize] != 0));
            if is_field {
                return Some(GaloisField { p, q, add, mul });
            }
        }
        None
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }
}

fn table(q: u32, f: impl Fn(u32, u32) -> u32) -> Vec<u32> {
    let mut t = Vec::with_capacity((q * q) as usize);
    for a in 0..q {
        for b in 0..q {
            t.push(f(a, b));
        }
    }
    t
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn digitwise(a: u32, b: u32, p: u32, e: u32) -> u32 {
    let (da, db) = (digits(a, p, e), digits(b, p, e));
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    undigits(&s, p)
}

fn poly_mul_mod(a: u32, b: u32, tail: u32, p: u32, e: u32) -> u32 {
    let (da, db) = (digits(a, p, e), digits(b, p, e));
    let e = e as usize;
    let mut prod = vec![0u32; 2 * e - 1];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    let modulus = digits(tail, p, e as u32);
    // x^e == -tail(x)
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let sub = (c * m) % p;
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + p - sub) % p;
        }
    }
    undigits(&prod[..e], p)
}

pub fn is_prime(x: u32) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, e))` when `x = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power(x: u32) -> Option<(u32, u32)> {
    if x < 2 {
        return None;
    }
    let p = (2..=x).find(|&d| x.is_multiple_of(d))?;
    let mut rest = x;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field(f: &GaloisField) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            // additive and multiplicative inverses
            assert!((0..q).any(|b| f.add(a, b) == 0));
            if a != 0 {
                assert!((1..q).any(|b| f.mul(a, b) == 1));
            }
            for b in 0..q {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1)] {
            check_field(&GaloisField::new(p, e).unwrap());
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(1), None);
        assert!(GaloisField::new(4, 1).is_none());
    }
}
