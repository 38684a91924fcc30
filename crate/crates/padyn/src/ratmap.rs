//! Rational self-maps of the projective line over Q in normalized
//! integer coordinates, with reduction data and the p-adic chordal metric.

use crate::arith::{padic_abs, vp_int, Prime, Rational};
use crate::poly::{IntPoly, PolyError, RatPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

static DEGREE_CAP: AtomicU64 = AtomicU64::new(4096);

/// Largest polynomial degree the iteration machinery will materialize.
pub fn degree_cap() -> u64 {
    DEGREE_CAP.load(Ordering::Relaxed)
}

/// Process-wide override for the iteration degree cap.
pub fn set_degree_cap(cap: u64) {
    DEGREE_CAP.store(cap.max(1), Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("both numerator and denominator are zero")]
    ZeroInputs,
    #[error("map is constant (degree zero)")]
    ConstantMap,
    #[error("numerator {g} and denominator {h} share a factor (resultant zero)")]
    DegenerateMap { g: String, h: String },
    #[error("iteration degree {base}^{exponent} exceeds the cap {cap} (adjustable via PADYN_MAX_DEGREE)")]
    DegreeLimit { base: usize, exponent: u32, cap: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A point of P^1(Q): a rational number or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(Rational),
    Infinity,
}

impl ProjPoint {
    pub fn from_int(n: i64) -> ProjPoint {
        ProjPoint::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    /// Coprime integer lift (a, b) with b >= 0; infinity lifts to (1, 0).
    pub fn lift(&self) -> (BigInt, BigInt) {
        match self {
            ProjPoint::Infinity => (BigInt::one(), BigInt::zero()),
            ProjPoint::Finite(x) => (x.numer().clone(), x.denom().clone()),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Infinity => write!(f, "inf"),
            ProjPoint::Finite(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

/// Reduction type of a map at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub prime: Prime,
    /// v_p of the resultant of the normalized coordinate pair.
    pub resultant_valuation: i64,
    pub good: bool,
}

/// A rational map g/h in lowest integer terms.
///
/// Invariants: the pair has joint content 1, the denominator's leading
/// coefficient is positive, degree = max(deg g, deg h) >= 1, and the
/// formal-degree resultant of the pair is nonzero (no common factor).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMap {
    g: IntPoly,
    h: IntPoly,
    degree: usize,
    resultant: BigInt,
}

impl RationalMap {
    /// Clears denominators by the joint lcm, strips the joint content and
    /// validates nondegeneracy.
    pub fn normalize(g_raw: &RatPoly, h_raw: &RatPoly) -> Result<RationalMap, MapError> {
        if g_raw.is_zero() && h_raw.is_zero() {
            return Err(MapError::ZeroInputs);
        }
        let l = g_raw.denominator_lcm().lcm(&h_raw.denominator_lcm());
        let g = g_raw.scale_to_int(&l);
        let h = h_raw.scale_to_int(&l);
        Self::from_int_pair(g, h)
    }

    /// Same, starting from an already-integral pair.
    pub fn from_int_pair(mut g: IntPoly, mut h: IntPoly) -> Result<RationalMap, MapError> {
        if g.is_zero() && h.is_zero() {
            return Err(MapError::ZeroInputs);
        }
        let c = g.content().gcd(&h.content());
        if c > BigInt::one() {
            g = g.map(|a| a.div_floor(&c));
            h = h.map(|a| a.div_floor(&c));
        }
        if h.leading().map_or(false, |lc| lc.is_negative()) {
            g = -&g;
            h = -&h;
        }
        let degree = match g.degree().into_iter().chain(h.degree()).max() {
            Some(d) if d >= 1 => d,
            _ => return Err(MapError::ConstantMap),
        };
        let resultant = g.resultant_formal(&h, degree)?;
        if resultant.is_zero() {
            return Err(MapError::DegenerateMap {
                g: g.to_string(),
                h: h.to_string(),
            });
        }
        Ok(RationalMap { g, h, degree, resultant })
    }

    /// Internal constructor for composition products whose nondegeneracy
    /// and resultant are known by construction.
    fn from_parts_unchecked(g: IntPoly, h: IntPoly, degree: usize, resultant: BigInt) -> RationalMap {
        debug_assert!(!resultant.is_zero());
        debug_assert_eq!(
            g.degree().into_iter().chain(h.degree()).max(),
            Some(degree)
        );
        RationalMap { g, h, degree, resultant }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.g
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.h
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Resultant of the normalized pair at formal degree `degree`.
    pub fn resultant(&self) -> &BigInt {
        &self.resultant
    }

    /// The identity map x/1.
    pub fn identity() -> RationalMap {
        RationalMap {
            g: IntPoly::x(),
            h: IntPoly::one(),
            degree: 1,
            resultant: BigInt::one(),
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Finite(x) => {
                let hv = self.h.eval_rational(x);
                if hv.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(self.g.eval_rational(x) / hv)
                }
            }
            ProjPoint::Infinity => {
                let dg = self.g.degree().expect("numerator nonzero");
                let dh = self.h.degree().unwrap_or(0);
                if self.h.is_zero() || dg > dh {
                    ProjPoint::Infinity
                } else if dg < dh {
                    ProjPoint::Finite(Rational::zero())
                } else {
                    ProjPoint::Finite(Rational::new(
                        self.g.leading().unwrap().clone(),
                        self.h.leading().unwrap().clone(),
                    ))
                }
            }
        }
    }

    /// Derivative (g'h - gh')/h^2 at a finite non-pole point.
    pub fn derivative_at(&self, x: &Rational) -> Option<Rational> {
        let hv = self.h.eval_rational(x);
        if hv.is_zero() {
            return None;
        }
        let num = self.g.derivative().eval_rational(x) * &hv
            - self.g.eval_rational(x) * self.h.derivative().eval_rational(x);
        Some(num / (&hv * &hv))
    }

    pub fn good_reduction(&self, p: Prime) -> ReductionReport {
        let v = vp_int(&self.resultant, p)
            .finite()
            .expect("resultant is nonzero");
        ReductionReport {
            prime: p,
            resultant_valuation: v,
            good: v == 0,
        }
    }

    /// n-fold composition, built one composition at a time.
    ///
    /// The resultant of each composite comes from the composition formula
    /// Res(f∘F) = Res(f)^deg(F) * Res(F)^(deg f)^2, corrected for any
    /// content removed, so no large determinant is ever expanded.
    pub fn iterate(&self, n: u32) -> Result<RationalMap, MapError> {
        let cap = degree_cap();
        match (self.degree as u128).checked_pow(n) {
            Some(dn) if dn <= cap as u128 => {}
            _ => {
                return Err(MapError::DegreeLimit {
                    base: self.degree,
                    exponent: n,
                    cap,
                })
            }
        }
        let mut acc = RationalMap::identity();
        for _ in 0..n {
            acc = self.compose_onto(&acc);
        }
        Ok(acc)
    }

    /// self ∘ inner.
    fn compose_onto(&self, inner: &RationalMap) -> RationalMap {
        let d = self.degree;
        let inner_deg = inner.degree;
        let mut gm_pow = Vec::with_capacity(d + 1);
        let mut hm_pow = Vec::with_capacity(d + 1);
        gm_pow.push(IntPoly::one());
        hm_pow.push(IntPoly::one());
        for i in 1..=d {
            gm_pow.push(&gm_pow[i - 1] * &inner.g);
            hm_pow.push(&hm_pow[i - 1] * &inner.h);
        }
        let homog_eval = |p: &IntPoly| {
            let mut acc = IntPoly::zero();
            for i in 0..=d {
                let c = p.coeff(i);
                if c.is_zero() {
                    continue;
                }
                acc = &acc + &(&gm_pow[i] * &hm_pow[d - i]).scale(&c);
            }
            acc
        };
        let mut g = homog_eval(&self.g);
        let mut h = homog_eval(&self.h);
        let c = g.content().gcd(&h.content());
        if c > BigInt::one() {
            g = g.map(|a| a.div_floor(&c));
            h = h.map(|a| a.div_floor(&c));
        }
        if h.leading().map_or(false, |lc| lc.is_negative()) {
            g = -&g;
            h = -&h;
        }
        let degree = d * inner_deg;
        let raw_res = self.resultant.pow(inner_deg as u32)
            * inner.resultant.pow((d * d) as u32);
        let resultant = if c.is_one() {
            raw_res
        } else {
            let denom = c.pow(2 * degree as u32);
            let (q, r) = raw_res.div_rem(&denom);
            debug_assert!(r.is_zero());
            q
        };
        RationalMap::from_parts_unchecked(g, h, degree, resultant)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.h.is_zero() {
            return write!(f, "({})/0", self.g);
        }
        if self.h == IntPoly::one() {
            write!(f, "{}", self.g)
        } else {
            write!(f, "({})/({})", self.g, self.h)
        }
    }
}

/// p-adic chordal metric on P^1(Q); exact, valued in powers of p in [0, 1].
pub fn chordal_distance(x: &ProjPoint, y: &ProjPoint, p: Prime) -> Rational {
    let one = Rational::one();
    let big = |r: &Rational| {
        let a = padic_abs(r, p);
        if a > one {
            a
        } else {
            one.clone()
        }
    };
    match (x, y) {
        (ProjPoint::Infinity, ProjPoint::Infinity) => Rational::zero(),
        (ProjPoint::Finite(a), ProjPoint::Infinity)
        | (ProjPoint::Infinity, ProjPoint::Finite(a)) => one.clone() / big(a),
        (ProjPoint::Finite(a), ProjPoint::Finite(b)) => {
            padic_abs(&(a - b), p) / (big(a) * big(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pt(n: i64, d: i64) -> ProjPoint {
        ProjPoint::Finite(q(n, d))
    }

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    /// (x^2 - x)/k
    fn xk_map(k: i64) -> RationalMap {
        RationalMap::from_int_pair(ip(&[0, -1, 1]), ip(&[k])).unwrap()
    }

    #[test]
    fn normalize_clears_and_strips() {
        let g = RatPoly::from_i64_pairs(&[(0, 1), (-1, 6), (1, 6)]); // (x^2 - x)/6
        let h = RatPoly::from_i64_pairs(&[(1, 1)]);
        let f = RationalMap::normalize(&g, &h).unwrap();
        assert_eq!(f.numerator(), &ip(&[0, -1, 1]));
        assert_eq!(f.denominator(), &ip(&[6]));
        assert_eq!(f.degree(), 2);
        assert_eq!(f.resultant(), &BigInt::from(36));

        let g = RatPoly::from_i64_pairs(&[(2, 1), (0, 1), (2, 1)]); // 2x^2 + 2 over 2
        let h = RatPoly::from_i64_pairs(&[(2, 1)]);
        let f = RationalMap::normalize(&g, &h).unwrap();
        assert_eq!(f.numerator(), &ip(&[1, 0, 1]));
        assert_eq!(f.denominator(), &ip(&[1]));
    }

    #[test]
    fn normalize_rejects_degenerate_input() {
        // x^2 / x shares the root 0
        let err = RationalMap::from_int_pair(ip(&[0, 0, 1]), ip(&[0, 1])).unwrap_err();
        assert!(matches!(err, MapError::DegenerateMap { .. }));
        assert!(matches!(
            RationalMap::from_int_pair(IntPoly::zero(), IntPoly::zero()),
            Err(MapError::ZeroInputs)
        ));
        assert!(matches!(
            RationalMap::from_int_pair(ip(&[3]), ip(&[6])),
            Err(MapError::ConstantMap)
        ));
    }

    #[test]
    fn denominator_sign_is_canonical() {
        let f = RationalMap::from_int_pair(ip(&[0, 1, -1]), ip(&[-6])).unwrap();
        assert_eq!(f.numerator(), &ip(&[0, -1, 1]));
        assert_eq!(f.denominator(), &ip(&[6]));
    }

    #[test]
    fn iterate_frozen_pairs() {
        let f = xk_map(6);
        let f2 = f.iterate(2).unwrap();
        assert_eq!(f2.numerator(), &ip(&[0, 6, -5, -2, 1]));
        assert_eq!(f2.denominator(), &ip(&[216]));
        assert_eq!(f2.degree(), 4);

        let sq = RationalMap::from_int_pair(ip(&[0, 0, 1]), ip(&[1])).unwrap();
        let sq2 = sq.iterate(2).unwrap();
        assert_eq!(sq2.numerator(), &IntPoly::monomial(BigInt::one(), 4));
        assert_eq!(sq2.denominator(), &IntPoly::one());

        assert_eq!(f.iterate(0).unwrap(), RationalMap::identity());
        assert_eq!(&f.iterate(1).unwrap(), &f);
    }

    #[test]
    fn iterate_respects_degree_cap() {
        let f = xk_map(6);
        let err = f.iterate(13).unwrap_err(); // 2^13 = 8192 > 4096
        assert!(matches!(err, MapError::DegreeLimit { base: 2, exponent: 13, .. }));
        assert!(f.iterate(12).is_ok());
    }

    #[test]
    fn iterate_matches_pointwise_composition() {
        let f = xk_map(6);
        let f3 = f.iterate(3).unwrap();
        for start in [pt(2, 1), pt(7, 1), pt(-3, 2), pt(1, 5), ProjPoint::Infinity] {
            let mut p = start.clone();
            for _ in 0..3 {
                p = f.apply(&p);
            }
            assert_eq!(f3.apply(&start), p);
        }
    }

    #[test]
    fn iterate_resultant_matches_direct_determinant() {
        let f = xk_map(6);
        for n in [2u32, 3] {
            let fit = f.iterate(n).unwrap();
            let direct = fit
                .numerator()
                .resultant_formal(fit.denominator(), fit.degree())
                .unwrap();
            assert_eq!(fit.resultant(), &direct);
        }
        assert_eq!(
            f.iterate(2).unwrap().resultant(),
            &BigInt::from(6).pow(12)
        );
    }

    #[test]
    fn good_reduction_frozen() {
        let f = xk_map(6);
        let r2 = f.good_reduction(pr(2));
        assert!(!r2.good);
        assert_eq!(r2.resultant_valuation, 2);
        let r3 = f.good_reduction(pr(3));
        assert!(!r3.good);
        let r5 = f.good_reduction(pr(5));
        assert!(r5.good);
        assert_eq!(r5.resultant_valuation, 0);

        let sq1 = RationalMap::from_int_pair(ip(&[1, 0, 1]), ip(&[1])).unwrap();
        for p in Prime::below(100) {
            assert!(sq1.good_reduction(p).good);
        }
    }

    #[test]
    fn apply_frozen_points() {
        let f = xk_map(6);
        assert_eq!(f.apply(&pt(7, 1)), pt(7, 1));
        assert_eq!(f.apply(&ProjPoint::Infinity), ProjPoint::Infinity);
        assert_eq!(f.apply(&pt(3, 1)), pt(1, 1));

        // pole sends a finite point to infinity
        let inv = RationalMap::from_int_pair(ip(&[1, 0, 1]), ip(&[0, 1])).unwrap();
        assert_eq!(inv.apply(&pt(0, 1)), ProjPoint::Infinity);
        assert_eq!(inv.apply(&ProjPoint::Infinity), ProjPoint::Infinity);

        let flip = RationalMap::from_int_pair(ip(&[0, 1]), ip(&[1, 0, 1])).unwrap();
        assert_eq!(flip.apply(&ProjPoint::Infinity), pt(0, 1));

        let ratio = RationalMap::from_int_pair(ip(&[1, 0, 2]), ip(&[0, 0, 1])).unwrap();
        assert_eq!(ratio.apply(&ProjPoint::Infinity), pt(2, 1));
    }

    #[test]
    fn derivative_at_points() {
        let f = xk_map(6);
        assert_eq!(f.derivative_at(&q(7, 1)), Some(q(13, 6)));
        let inv = RationalMap::from_int_pair(ip(&[1, 0, 1]), ip(&[0, 1])).unwrap();
        assert_eq!(inv.derivative_at(&q(0, 1)), None);
    }

    #[test]
    fn chordal_frozen_values() {
        assert_eq!(chordal_distance(&pt(0, 1), &pt(2, 1), pr(2)), q(1, 2));
        assert_eq!(chordal_distance(&pt(1, 2), &ProjPoint::Infinity, pr(2)), q(1, 2));
        for p in [3u64, 5, 7] {
            assert_eq!(
                chordal_distance(&pt(0, 1), &ProjPoint::Infinity, pr(p)),
                q(1, 1)
            );
        }
        assert_eq!(
            chordal_distance(&ProjPoint::Infinity, &ProjPoint::Infinity, pr(5)),
            Rational::zero()
        );
    }

    #[test]
    fn chordal_metric_properties() {
        let pts = [
            pt(0, 1),
            pt(2, 1),
            pt(1, 2),
            pt(-4, 3),
            pt(9, 8),
            ProjPoint::Infinity,
        ];
        for p in [pr(2), pr(3), pr(5)] {
            for a in &pts {
                for b in &pts {
                    let d = chordal_distance(a, b, p);
                    assert_eq!(d, chordal_distance(b, a, p));
                    assert!(d <= Rational::one());
                    assert_eq!(d.is_zero(), a == b);
                    for c in &pts {
                        let dc = chordal_distance(a, c, p);
                        let m = chordal_distance(a, b, p).max(chordal_distance(b, c, p));
                        assert!(dc <= m, "ultrametric failure at p={p}");
                    }
                }
            }
        }
    }
}
