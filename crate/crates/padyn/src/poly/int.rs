//! Exact algorithms on integer polynomials: contents, subresultant gcd,
//! squarefree parts, resultants and discriminants, rational roots.

use super::det::{bareiss_det, sylvester_formal};
use super::Polynomial;
use crate::arith::{is_prime_u64, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;

pub type IntPoly = Polynomial<BigInt>;
pub type RatPoly = Polynomial<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("zero polynomial rejected")]
    ZeroPolynomial,
    #[error("polynomial of degree at least one required")]
    ConstantPolynomial,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("formal degree {formal} is below the actual degree {actual}")]
    FormalDegreeTooSmall { formal: usize, actual: usize },
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Gcd of the coefficients (non-negative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut c = BigInt::zero();
        for a in self.coeffs() {
            c = c.gcd(a);
            if c.is_one() {
                break;
            }
        }
        c
    }

    /// Content removed, sign of the leading coefficient preserved.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.map(|a| a.div_floor(&c))
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive_positive(&self) -> IntPoly {
        let p = self.primitive_part();
        match p.leading() {
            Some(lc) if lc.is_negative() => -&p,
            _ => p,
        }
    }

    /// Largest k with x^k dividing self; 0 for the zero polynomial.
    pub fn trailing_zero_order(&self) -> usize {
        self.coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Coefficients reversed: x^deg * self(1/x), trailing zeros trimmed.
    pub fn reverse(&self) -> IntPoly {
        Polynomial::new(self.coeffs().iter().rev().cloned().collect())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| Rational::from_integer(c.clone()))
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs().iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Homogeneous evaluation sum c_i a^i b^(d-i) at formal degree d.
    pub fn eval_homogeneous(&self, d: usize, a: &BigInt, b: &BigInt) -> BigInt {
        let mut apow = Vec::with_capacity(d + 1);
        let mut bpow = Vec::with_capacity(d + 1);
        apow.push(BigInt::one());
        bpow.push(BigInt::one());
        for i in 1..=d {
            let pa = &apow[i - 1] * a;
            apow.push(pa);
            let pb = &bpow[i - 1] * b;
            bpow.push(pb);
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs().iter().enumerate() {
            acc += c * &apow[i] * &bpow[d - i];
        }
        acc
    }

    /// Homogeneous evaluation reduced modulo m (representative in [0, m)).
    pub fn eval_homogeneous_mod(&self, d: usize, a: &BigInt, b: &BigInt, m: &BigInt) -> BigInt {
        let mut apow = vec![BigInt::one()];
        let mut bpow = vec![BigInt::one()];
        for i in 1..=d {
            apow.push((&apow[i - 1] * a).mod_floor(m));
            bpow.push((&bpow[i - 1] * b).mod_floor(m));
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs().iter().enumerate() {
            acc = (acc + c * &apow[i] * &bpow[d - i]).mod_floor(m);
        }
        acc
    }

    /// Exact division; errors when the quotient leaves Z[x].
    pub fn exact_div(&self, rhs: &IntPoly) -> Result<IntPoly, PolyError> {
        super::det::long_div_exact(self, rhs).ok_or(PolyError::InexactDivision)
    }

    /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced mod b.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let da = self.degree().expect("nonzero dividend");
        let db = b.degree().expect("nonzero divisor");
        debug_assert!(da >= db);
        let lcb = b.leading().unwrap().clone();
        let mut r = self.clone();
        let mut spare = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let top = r.leading().unwrap().clone();
            r = &r.scale(&lcb) - &b.scale(&top).shift_up(dr - db);
            spare -= 1;
        }
        if spare > 0 {
            r = r.scale(&lcb.pow(spare as u32));
        }
        r
    }

    /// Polynomial gcd by the subresultant pseudo-remainder sequence.
    /// The result is primitive with positive leading coefficient.
    pub fn gcd_poly(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_positive();
        let mut b = other.primitive_positive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive_positive();
            }
            let divisor = &g * h.pow(delta as u32);
            a = b;
            b = r.map(|c| {
                let (q, rem) = c.div_rem(&divisor);
                debug_assert!(rem.is_zero());
                q
            });
            g = a.leading().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                let num = g.pow(delta as u32);
                let den = h.pow(delta as u32 - 1);
                let (q, rem) = num.div_rem(&den);
                debug_assert!(rem.is_zero());
                q
            };
        }
    }

    /// True when the polynomial has no repeated roots.
    pub fn is_squarefree(&self) -> bool {
        if self.degree().map_or(true, |d| d == 0) {
            return true;
        }
        self.gcd_poly(&self.derivative()).degree() == Some(0)
    }

    /// Product of the distinct irreducible factors, primitive with
    /// positive leading coefficient. Constants map to 1.
    pub fn squarefree_part(&self) -> Result<IntPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(IntPoly::one());
        }
        let a = self.primitive_positive();
        let g = a.gcd_poly(&a.derivative());
        let q = a.exact_div(&g)?;
        Ok(q.primitive_positive())
    }

    /// Resultant with the Sylvester determinant sign convention, computed
    /// by fraction-free elimination. A zero polynomial against anything
    /// nonzero gives 0; two nonzero constants give 1.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(BigInt::zero());
        }
        let da = self.degree().unwrap();
        let db = other.degree().unwrap();
        Ok(bareiss_det(sylvester_formal(
            self.coeffs(),
            other.coeffs(),
            da,
            db,
        )))
    }

    /// Resultant of the degree-d homogenizations of the two polynomials
    /// (formal degree d on both sides, allowing degree drop).
    pub fn resultant_formal(&self, other: &IntPoly, d: usize) -> Result<BigInt, PolyError> {
        for p in [self, other] {
            if let Some(deg) = p.degree() {
                if deg > d {
                    return Err(PolyError::FormalDegreeTooSmall {
                        formal: d,
                        actual: deg,
                    });
                }
            }
        }
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(BigInt::zero());
        }
        Ok(bareiss_det(sylvester_formal(
            self.coeffs(),
            other.coeffs(),
            d,
            d,
        )))
    }

    /// (-1)^(d(d-1)/2) * Res(a, a') / lc(a); linear polynomials give 1.
    pub fn discriminant(&self) -> Result<BigInt, PolyError> {
        let d = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        if d == 0 {
            return Err(PolyError::ConstantPolynomial);
        }
        let r = self.resultant(&self.derivative())?;
        let lc = self.leading().unwrap();
        let (q, rem) = r.div_rem(lc);
        debug_assert!(rem.is_zero(), "resultant divisible by leading coefficient");
        Ok(if (d * (d - 1) / 2) % 2 == 0 { q } else { -q })
    }

    /// All rational roots, in increasing order, found by testing
    /// divisor-quotient candidates of the extreme coefficients.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return vec![];
        }
        let mut out = BTreeSet::new();
        let k = self.trailing_zero_order();
        if k > 0 {
            out.insert(Rational::zero());
        }
        let stripped = Polynomial::new(self.coeffs()[k..].to_vec());
        if stripped.degree() == Some(0) {
            return out.into_iter().collect();
        }
        let nums = divisors(&stripped.coeff(0).abs());
        let dens = divisors(&stripped.leading().unwrap().abs());
        for n in &nums {
            for d in &dens {
                for sign in [1i64, -1] {
                    let cand = Rational::new(n * BigInt::from(sign), d.clone());
                    if stripped.eval_rational(&cand).is_zero() {
                        out.insert(cand);
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

impl RatPoly {
    pub fn from_i64_pairs(coeffs: &[(i64, i64)]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in self.coeffs() {
            l = l.lcm(c.denom());
        }
        l
    }

    /// Multiplies by m and converts; m must clear every denominator.
    pub fn scale_to_int(&self, m: &BigInt) -> IntPoly {
        self.map(|c| {
            let scaled = c * Rational::from_integer(m.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
    }
}

/// All positive divisors of |n| in increasing order, for n != 0.
/// Factorization is trial division plus a u64 Pollard rho fallback;
/// an unfactored large residual is kept as a single block.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    assert!(!m.is_zero());
    let mut push = |p: BigInt, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(e) = factors.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            factors.push((p, 1));
        }
    };
    let mut d = 2u64;
    while d < 1_000_000 {
        let db = BigInt::from(d);
        if (&db * &db) > m {
            break;
        }
        loop {
            let (q, r) = m.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            push(db.clone(), &mut factors);
            m = q;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        if let Some(small) = m.to_u64() {
            for p in factor_u64(small) {
                push(BigInt::from(p), &mut factors);
            }
        } else {
            push(m, &mut factors);
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

fn factor_u64(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![];
    }
    if is_prime_u64(n) {
        return vec![n];
    }
    let d = pollard_rho(n);
    let mut out = factor_u64(d);
    out.extend(factor_u64(n / d));
    out
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    for c in 1..64u64 {
        let step = |x: u64| (mul(x, x) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        loop {
            x = step(x);
            y = step(step(y));
            let d = x.abs_diff(y).gcd(&n);
            if d == n {
                break;
            }
            if d > 1 {
                return d;
            }
        }
    }
    unreachable!("pollard rho exhausted parameter choices")
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}
