//! Weil and canonical heights with explicit error accounting, plus the
//! Mahler-measure route to heights of algebraic points.
//!
//! Rational-point canonical heights are certified: the reported interval
//! always contains the true value. Heights through complex root finding
//! are numeric and flagged as such.

mod aberth;
mod canonical;

pub use aberth::mahler_height;
pub use canonical::canonical_height;

use crate::arith::Rational;
use crate::numeric::{log_big, log_big_iv, Iv};
use crate::poly::{bareiss_det, sylvester_formal, IntPoly, PolyError, Polynomial};
use crate::ratmap::{MapError, ProjPoint, RationalMap};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    CertifiedIterate,
    MahlerNumeric,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::CertifiedIterate => "certified_iterate",
            Method::MahlerNumeric => "mahler_numeric",
        }
    }
}

/// A height value with its error radius.
///
/// For `Exact` and `CertifiedIterate` the true height lies in
/// [value - error, value + error]; for `MahlerNumeric` the error is a
/// heuristic tolerance from the root finder.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightEstimate {
    pub value: f64,
    pub error: f64,
    pub method: Method,
}

impl HeightEstimate {
    pub(crate) fn exact_zero() -> HeightEstimate {
        HeightEstimate {
            value: 0.0,
            error: 0.0,
            method: Method::Exact,
        }
    }
}

/// The explicit constant with |h(f(P)) - d·h(P)| <= c for every point of
/// P^1(Q̄), hence |ĥ_f - h| <= c/(d-1).
#[derive(Debug, Clone)]
pub struct HeightConstant {
    pub map: RationalMap,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HeightError {
    #[error("height comparison constants require degree at least 2")]
    DegreeTooSmall,
    #[error("tolerance must be positive")]
    InvalidTolerance,
    #[error("requested tolerance {requested:e} not attainable; achieved about {achievable:e}")]
    PrecisionLimit { requested: f64, achievable: f64 },
    #[error("input polynomial must be squarefree")]
    InputNotSquarefree,
    #[error("complex root finder stalled at residual {residual:e}")]
    RootFinderStalled { residual: f64 },
    #[error("every root maps to infinity; the pushforward has no finite part")]
    AllConjugatesAtInfinity,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// log max(|p|, |q|) for a reduced fraction p/q; infinity has height 0.
pub fn weil_height(p: &ProjPoint) -> HeightEstimate {
    let value = match p {
        ProjPoint::Infinity => 0.0,
        ProjPoint::Finite(x) => {
            let m = x.numer().abs().max(x.denom().clone());
            if m.is_one() {
                0.0
            } else {
                log_big(&m)
            }
        }
    };
    HeightEstimate {
        value,
        error: 0.0,
        method: Method::Exact,
    }
}

/// Exact Gaussian elimination; returns None only for singular systems.
fn solve_rational(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..n {
                let t = &m[col][j] * &factor;
                m[r][j] = &m[r][j] - &t;
            }
            let t = &rhs[col] * &factor;
            rhs[r] = &rhs[r] - &t;
        }
    }
    Some(rhs)
}

/// Solves a·g + b·h = target with deg a, deg b < d; solutions are integral
/// because the system matrix has determinant ±Res(g, h).
fn cofactor_pair(f: &RationalMap, target: &IntPoly) -> (IntPoly, IntPoly) {
    let d = f.degree();
    let g = f.numerator();
    let h = f.denominator();
    let n = 2 * d;
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for j in 0..d {
            if i >= j {
                row[j] = Rational::from_integer(g.coeff(i - j));
                row[d + j] = Rational::from_integer(h.coeff(i - j));
            }
        }
    }
    let rhs: Vec<Rational> = (0..n)
        .map(|i| Rational::from_integer(target.coeff(i)))
        .collect();
    let sol = solve_rational(m, rhs).expect("system determinant is the nonzero resultant");
    let take = |range: std::ops::Range<usize>| {
        IntPoly::new(
            sol[range]
                .iter()
                .map(|x| {
                    assert!(x.denom().is_one(), "cofactor coefficients are integers");
                    x.numer().clone()
                })
                .collect(),
        )
    };
    let a = take(0..d);
    let b = take(d..n);
    assert_eq!(&(&a * g) + &(&b * h), *target, "cofactor identity check");
    (a, b)
}

/// Certified height comparison constant for a map of degree >= 2.
///
/// The expansion side is log((d+1)·max|coeff|). The contraction side comes
/// from the two cofactor identities a·g + b·h = Res·x^(2d-1) and
/// c·g + e·h = Res: any common divisor of the evaluated coordinate pair
/// divides Res, which cancels against the Res on the right, leaving
/// log(2d·max cofactor coefficient).
pub fn height_bound_constant(f: &RationalMap) -> Result<HeightConstant, HeightError> {
    let d = f.degree();
    if d < 2 {
        return Err(HeightError::DegreeTooSmall);
    }
    let maxc = f
        .numerator()
        .max_abs_coeff()
        .max(f.denominator().max_abs_coeff());
    let upper = log_big_iv(&maxc)
        .add(Iv::widened(((d + 1) as f64).ln()))
        .hi;

    let res_x = IntPoly::monomial(f.resultant().clone(), 2 * d - 1);
    let res_const = IntPoly::constant(f.resultant().clone());
    let (a, b) = cofactor_pair(f, &res_x);
    let (c2, e2) = cofactor_pair(f, &res_const);
    let maxcof = a
        .max_abs_coeff()
        .max(b.max_abs_coeff())
        .max(c2.max_abs_coeff())
        .max(e2.max_abs_coeff())
        .max(BigInt::one());
    let lower = log_big_iv(&maxcof)
        .add(Iv::widened(((2 * d) as f64).ln()))
        .hi;

    Ok(HeightConstant {
        map: f.clone(),
        c: upper.max(lower).max(0.0),
    })
}

/// Resultant in y of m(y) against x·h_N(y) - g_N(y): a polynomial whose
/// roots, with multiplicity, are the N-th images of the roots of m.
///
/// The determinant is expanded over Z[x] by fraction-free elimination, so
/// the answer is exact no matter how large the iterate coefficients get.
pub fn pushforward_polynomial(
    f: &RationalMap,
    m: &IntPoly,
    n: u32,
) -> Result<IntPoly, HeightError> {
    let k = match m.degree() {
        None => return Err(HeightError::Poly(PolyError::ZeroPolynomial)),
        Some(0) => return Err(HeightError::Poly(PolyError::ConstantPolynomial)),
        Some(k) => k,
    };
    if !m.is_squarefree() {
        return Err(HeightError::InputNotSquarefree);
    }
    let fit = f.iterate(n)?;
    let dn = fit.degree();
    let mc: Vec<Polynomial<BigInt>> = m
        .coeffs()
        .iter()
        .map(|c| Polynomial::constant(c.clone()))
        .collect();
    let qc: Vec<Polynomial<BigInt>> = (0..=dn)
        .map(|j| {
            Polynomial::new(vec![
                -fit.numerator().coeff(j),
                fit.denominator().coeff(j),
            ])
        })
        .collect();
    let det = bareiss_det(sylvester_formal(&mc, &qc, k, dn));
    debug_assert!(!det.is_zero(), "coordinates of an iterate are coprime");
    match det.degree() {
        None | Some(0) => Err(HeightError::AllConjugatesAtInfinity),
        Some(_) => Ok(det.primitive_positive()),
    }
}
