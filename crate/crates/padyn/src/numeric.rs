//! Self-validating f64 intervals and float views of big integers.
//!
//! Every operation widens its result outward by a couple of ulps, so an
//! interval always encloses the exact real value it stands for. That is
//! enough rigor for the certified height computations, which keep their
//! own explicit slack on top.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Iv {
    pub lo: f64,
    pub hi: f64,
}

fn pad(x: f64) -> f64 {
    // two ulps of slack plus a subnormal floor
    x.abs() * 4.5e-16 + 1e-300
}

impl Iv {
    pub fn exact(x: f64) -> Iv {
        Iv { lo: x, hi: x }
    }

    pub fn widened(x: f64) -> Iv {
        Iv { lo: x - pad(x), hi: x + pad(x) }
    }

    pub fn widen(self) -> Iv {
        Iv {
            lo: self.lo - pad(self.lo),
            hi: self.hi + pad(self.hi),
        }
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn add(self, o: Iv) -> Iv {
        Iv { lo: self.lo + o.lo, hi: self.hi + o.hi }.widen()
    }

    pub fn sub(self, o: Iv) -> Iv {
        Iv { lo: self.lo - o.hi, hi: self.hi - o.lo }.widen()
    }

    pub fn neg(self) -> Iv {
        Iv { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(self, o: Iv) -> Iv {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        Iv {
            lo: c.iter().cloned().fold(f64::INFINITY, f64::min),
            hi: c.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        }
        .widen()
    }

    pub fn abs(self) -> Iv {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Iv { lo: 0.0, hi: self.hi.max(-self.lo) }
        }
    }

    pub fn max(self, o: Iv) -> Iv {
        Iv { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    /// Natural log; the interval must be strictly positive (and not NaN).
    pub fn ln(self) -> Option<Iv> {
        if !(self.lo > 0.0) || self.hi.is_nan() {
            return None;
        }
        Some(Iv { lo: self.lo.ln(), hi: self.hi.ln() }.widen())
    }

    /// Division by a strictly positive interval.
    pub fn div_pos(self, o: Iv) -> Option<Iv> {
        if !(o.lo > 0.0) {
            return None;
        }
        let c = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        Some(
            Iv {
                lo: c.iter().cloned().fold(f64::INFINITY, f64::min),
                hi: c.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            }
            .widen(),
        )
    }

    /// Multiplication by 2^k, exact in f64 within the exponent range.
    pub fn scale_pow2(self, k: i32) -> Iv {
        let s = (k as f64).exp2();
        Iv { lo: self.lo * s, hi: self.hi * s }
    }

    pub fn scale_inv(self, d: f64) -> Iv {
        debug_assert!(d > 0.0);
        Iv { lo: self.lo / d, hi: self.hi / d }.widen()
    }

    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

const LN2: f64 = std::f64::consts::LN_2;

/// Natural log of |n| for nonzero n, accurate to a few units in the
/// 14th decimal place regardless of the size of n.
pub(crate) fn log_big(n: &BigInt) -> f64 {
    let a = n.abs();
    debug_assert!(!a.is_zero());
    let bits = a.bits();
    if bits <= 53 {
        return a.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (&a >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * LN2
}

/// n / 2^shift as a validated interval. Exponents outside the f64 range
/// degrade to the everything interval, which downstream finiteness checks
/// reject.
pub(crate) fn big_shifted_iv(n: &BigInt, shift: i64) -> Iv {
    if n.is_zero() {
        return Iv::exact(0.0);
    }
    let bits = n.bits() as i64;
    let drop = (bits - 53).max(0);
    let top = (n >> drop as u64).to_f64().unwrap();
    let e = drop - shift;
    if e.abs() >= 1000 {
        return Iv {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        };
    }
    Iv::widened(top).scale_pow2(e as i32)
}

/// ln |n| as an interval; the padding covers everything `log_big` can lose.
pub(crate) fn log_big_iv(n: &BigInt) -> Iv {
    let x = log_big(n);
    let pad = x.abs() * 1e-13 + 1e-299;
    Iv { lo: x - pad, hi: x + pad }
}
