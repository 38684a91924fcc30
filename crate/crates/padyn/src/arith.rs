//! Exact rational arithmetic, validated primes and p-adic valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Reduced rational number with positive denominator.
///
/// `num_rational::BigRational` maintains both invariants on construction.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A validated prime number.
///
/// Construction runs a deterministic Miller-Rabin test, so every `Prime`
/// in circulation really is prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// Primes below `bound` in increasing order.
    pub fn below(bound: u64) -> Vec<Prime> {
        (2..bound).filter(|&n| is_prime_u64(n)).map(Prime).collect()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // These witnesses decide primality for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An integer extended with +Infinity, the value group of a p-adic valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    Finite(i64),
    Infinity,
}

impl ExtInt {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtInt::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            ExtInt::Infinity => None,
        }
    }

    pub fn min(self, other: ExtInt) -> ExtInt {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use ExtInt::*;
        match (self, other) {
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a + b),
            _ => ExtInt::Infinity,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(v) => v.fmt(f),
            ExtInt::Infinity => write!(f, "inf"),
        }
    }
}

/// p-adic valuation of an integer; `Infinity` for zero.
pub fn vp_int(n: &BigInt, p: Prime) -> ExtInt {
    if n.is_zero() {
        return ExtInt::Infinity;
    }
    let p = p.to_bigint();
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return ExtInt::Finite(v);
        }
        v += 1;
        n = q;
    }
}

/// p-adic valuation of a rational; `Infinity` for zero.
///
/// v_p(a/b) = v_p(a) - v_p(b); multiplicative and ultrametric.
pub fn vp(x: &Rational, p: Prime) -> ExtInt {
    if x.is_zero() {
        return ExtInt::Infinity;
    }
    let vn = vp_int(x.numer(), p).finite().expect("nonzero numerator");
    let vd = vp_int(x.denom(), p).finite().expect("nonzero denominator");
    ExtInt::Finite(vn - vd)
}

/// p-adic absolute value |x|_p = p^(-v_p(x)) as an exact rational; 0 for x = 0.
pub fn padic_abs(x: &Rational, p: Prime) -> Rational {
    match vp(x, p) {
        ExtInt::Infinity => Rational::zero(),
        ExtInt::Finite(v) => pow_rational(p, -v),
    }
}

/// p^e as an exact rational, for possibly negative e.
pub fn pow_rational(p: Prime, e: i64) -> Rational {
    let pk = p.to_bigint().pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(pk)
    } else {
        Rational::new(BigInt::one(), pk)
    }
}
