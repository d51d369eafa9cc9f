//! Arithmetic in the prime field `F_p`.
//!
//! Residues are plain `u32` values kept in canonical form `0..p`. The prime is
//! a runtime value so a single build can work over every characteristic.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime accepted. Keeps every product of two residues inside `u64`
/// and every residue inside `u32` with room to spare.
pub const MAX_PRIME: u32 = 65_521;

/// A validated prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Prime> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not a supported prime")));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    /// Reduce an arbitrary integer to its canonical residue.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.0) {
            return Err(Error::Domain("inverse of zero".into()));
        }
        // Fermat: a^(p-2)
        Ok(self.pow(a, self.0 as u64 - 2))
    }

    /// `C(m, k) mod p` by Lucas' theorem: the product of binomials of the
    /// base-`p` digits.
    pub fn binomial(self, mut m: u64, mut k: u64) -> u32 {
        if k > m {
            return 0;
        }
        let p = self.0 as u64;
        let mut acc = 1u32;
        while k > 0 {
            let (mi, ki) = (m % p, k % p);
            if ki > mi {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(mi as u32, ki as u32));
            m /= p;
            k /= p;
        }
        acc
    }

    // C(m, k) for m < p, via the multiplicative formula.
    fn small_binomial(self, m: u32, k: u32) -> u32 {
        let k = k.min(m - k);
        let mut num = 1u32;
        let mut den = 1u32;
        for i in 0..k {
            num = self.mul(num, m - i);
            den = self.mul(den, i + 1);
        }
        // den is a product of integers < p, hence a unit.
        self.mul(num, self.inv(den).expect("unit denominator"))
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for display of signs.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.0 / 2 {
            a as i64 - self.0 as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(rows: usize, p: u32) -> Vec<Vec<u32>> {
        let mut t = vec![vec![1u32]];
        for m in 1..=rows {
            let prev = &t[m - 1];
            let mut row = vec![1u32; m + 1];
            for k in 1..m {
                row[k] = (prev[k - 1] + prev[k]) % p;
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn scalar_ops() {
        let p3 = Prime::new(3).unwrap();
        let p5 = Prime::new(5).unwrap();
        assert_eq!(p3.mul(2, 2), 1);
        assert_eq!(p5.inv(2).unwrap(), 3);
        assert_eq!(p3.neg(1), 2);
        assert_eq!(p3.add(2, 2), 1);
        assert_eq!(p3.sub(0, 1), 2);
        assert!(matches!(p5.inv(0), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_non_primes() {
        for n in [0, 1, 4, 9, 15, 100] {
            assert!(Prime::new(n).is_err(), "{n}");
        }
        assert!(Prime::new(2).unwrap().is_two());
    }

    #[test]
    fn binomial_examples() {
        let p3 = Prime::new(3).unwrap();
        assert_eq!(p3.binomial(4, 0), 1);
        assert_eq!(p3.binomial(4, 2), 0);
        assert_eq!(p3.binomial(3, 1), 0);
        assert_eq!(p3.binomial(2, 5), 0);
    }

    #[test]
    fn lucas_matches_pascal() {
        for p in [2u32, 3, 5, 7] {
            let prime = Prime::new(p).unwrap();
            let table = pascal(200, p);
            for m in 0..=200u64 {
                for k in 0..=200u64 {
                    let expected = if k > m { 0 } else { table[m as usize][k as usize] };
                    assert_eq!(prime.binomial(m, k), expected, "p={p} C({m},{k})");
                }
            }
        }
    }

    #[test]
    fn inverses_round_trip() {
        for p in [2u32, 3, 5, 7, 11, 65_521] {
            let prime = Prime::new(p).unwrap();
            for a in (1..p).step_by(((p / 50) as usize).max(1)) {
                assert_eq!(prime.mul(a, prime.inv(a).unwrap()), 1);
            }
        }
    }
}
