//! Prime fields and prime search.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("residue {value} out of range for p = {p}")]
    OutOfRange { value: u64, p: u64 },
    #[error("prime interval needs n >= s >= 3, got n = {n}, s = {s}")]
    BadInterval { n: usize, s: usize },
}

/// The field of integers modulo a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a % self.p == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.p as i128, (a % self.p) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    /// Every element, `0..p`.
    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// One-shot field operation on residues in `[0, p)`. `b` is ignored by the
/// unary operations.
pub fn field_arith(p: u64, op: FieldOp, a: u64, b: u64) -> Result<u64, FieldError> {
    let f = PrimeField::new(p)?;
    for value in [a, b] {
        if value >= p {
            return Err(FieldError::OutOfRange { value, p });
        }
    }
    Ok(match op {
        FieldOp::Add => f.add(a, b),
        FieldOp::Mul => f.mul(a, b),
        FieldOp::Neg => f.neg(a),
        FieldOp::Inv => f.inv(a)?,
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime(k: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if k < 2 {
        return false;
    }
    for &b in &BASES {
        if k % b == 0 {
            return k == b;
        }
    }
    let mut d = k - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, k);
        if x == 1 || x == k - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, k);
            if x == k - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime chosen for a plane order, with the search window it came from.
///
/// `lo = sqrt(n/(s-1))` and `hi = lo + (n/(s-1))^0.2625` are floating-point
/// reports of the window; `q >= lo` is certified in integers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimeWitness {
    pub q: u64,
    pub lo: f64,
    pub hi: f64,
    /// True when `q` lies beyond `hi`.
    pub widened: bool,
}

/// Smallest `k >= 0` with `k^2 (s-1) >= n`, i.e. `ceil(sqrt(n/(s-1)))`.
fn ceil_sqrt_ratio(n: u64, d: u64) -> u64 {
    let mut k = ((n as f64 / d as f64).sqrt()) as u64;
    while k > 0 && (k - 1) * (k - 1) * d >= n {
        k -= 1;
    }
    while k * k * d < n {
        k += 1;
    }
    k
}

/// Least prime `q >= sqrt(n/(s-1))`.
pub fn prime_in_interval(n: usize, s: usize) -> Result<PrimeWitness, FieldError> {
    if s < 3 || n < s {
        return Err(FieldError::BadInterval { n, s });
    }
    let x = n as f64 / (s - 1) as f64;
    let lo = x.sqrt();
    let hi = lo + x.powf(0.2625);
    let start = ceil_sqrt_ratio(n as u64, (s - 1) as u64).max(2);
    // Bertrand: a prime always lies in [k, 2k].
    let q = (start..=2 * start)
        .find(|&k| is_prime(k))
        .expect("Bertrand's postulate guarantees a prime in [k, 2k]");
    Ok(PrimeWitness { q, lo, hi, widened: q as f64 > hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(k: u64) -> bool {
        k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)
    }

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is = vec![true; limit + 1];
        is[0] = false;
        if limit >= 1 {
            is[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if is[i] {
                let mut j = i * i;
                while j <= limit {
                    is[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(field_arith(7, FieldOp::Inv, 3, 0), Ok(5));
        assert_eq!(field_arith(5, FieldOp::Add, 4, 3), Ok(2));
        assert_eq!(field_arith(2, FieldOp::Mul, 1, 1), Ok(1));
        assert_eq!(field_arith(7, FieldOp::Neg, 3, 0), Ok(4));
        assert_eq!(field_arith(7, FieldOp::Inv, 0, 0), Err(FieldError::ZeroInverse));
        assert_eq!(field_arith(6, FieldOp::Add, 1, 1), Err(FieldError::NotPrime(6)));
        assert_eq!(
            field_arith(7, FieldOp::Add, 7, 1),
            Err(FieldError::OutOfRange { value: 7, p: 7 })
        );
    }

    #[test]
    fn inverses_for_small_primes() {
        for p in (2..=97).filter(|&p| trial_division(p)) {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "p = {p}, a = {a}");
            }
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.sub(a, a), 0);
            }
        }
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(25));
        assert!(!is_prime(0));
        assert!(is_prime(2));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn primality_matches_trial_division_up_to_a_million() {
        let table = sieve(1_000_000);
        for (k, &expected) in table.iter().enumerate() {
            assert_eq!(is_prime(k as u64), expected, "k = {k}");
        }
        // spot-check the sieve against trial division
        for k in (0..1_000_000u64).step_by(997) {
            assert_eq!(table[k as usize], trial_division(k));
        }
    }

    #[test]
    fn prime_window_examples() {
        // lo = sqrt(1001/3) ~ 18.27, hi ~ 22.87; 19 is the least prime >= lo
        let w = prime_in_interval(1001, 4).unwrap();
        assert_eq!(w.q, 19);
        assert!(!w.widened);
        assert!((w.lo - 18.266).abs() < 1e-3);
        assert!((w.hi - 22.87).abs() < 1e-2);

        // lo = sqrt(3.5) ~ 1.87, hi = lo + 3.5^0.2625 ~ 3.26
        let w = prime_in_interval(7, 3).unwrap();
        assert_eq!(w.q, 2);
        assert!(!w.widened);

        let w = prime_in_interval(50, 3).unwrap();
        assert_eq!(w.q, 5);
        assert_eq!(w.lo, 5.0);

        assert!(prime_in_interval(10, 2).is_err());
        assert!(prime_in_interval(3, 4).is_err());
    }

    #[test]
    fn prime_window_is_least_prime_above_lo() {
        let table = sieve(10_000);
        for s in 3..7usize {
            for n in s..20_000usize {
                let w = prime_in_interval(n, s).unwrap();
                let q = w.q as usize;
                assert!(table[q]);
                // q^2 (s-1) >= n exactly
                assert!(q * q * (s - 1) >= n);
                // no smaller prime also clears the bound
                assert!((2..q).all(|k| !table[k] || k * k * (s - 1) < n), "n={n} s={s}");
                assert!(q <= 2 * ceil_sqrt_ratio(n as u64, (s - 1) as u64).max(2) as usize);
            }
        }
    }
}
