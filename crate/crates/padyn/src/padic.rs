//! Newton polygons and exact root counting over Q_p.
//!
//! Everything here is a certificate, not an approximation: root counts come
//! from a residue recursion whose termination is guaranteed by a discriminant
//! valuation bound, and non-integral roots are routed through the reversed
//! polynomial rather than any extension arithmetic.

use crate::arith::{vp_int, Prime, Rational};
use crate::poly::{IntPoly, PolyError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("zero polynomial has no Newton polygon or root count")]
    ZeroPolynomial,
    #[error("input must be squarefree")]
    NotSquarefree,
    #[error("residue recursion exceeded its discriminant depth budget of {budget}")]
    DepthExceeded { budget: i64 },
    #[error("projective degree {given} is smaller than the polynomial degree {actual}")]
    ProjectiveDegreeTooSmall { given: usize, actual: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Lower convex hull of (i, v_p(a_i)), taken after splitting off the power
/// of x dividing the polynomial.
///
/// A segment of slope -s and horizontal length l certifies exactly l roots
/// of valuation s in an algebraic closure of Q_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// (slope, length) pairs with slopes strictly increasing.
    pub segments: Vec<(Rational, usize)>,
    /// Order of vanishing at 0.
    pub zero_root_multiplicity: usize,
}

impl NewtonPolygon {
    /// Sum of segment lengths plus the multiplicity of the zero root;
    /// always the degree of the input.
    pub fn total_length(&self) -> usize {
        self.zero_root_multiplicity + self.segments.iter().map(|(_, l)| l).sum::<usize>()
    }
}

pub fn newton_polygon(a: &IntPoly, p: Prime) -> Result<NewtonPolygon, PadicError> {
    if a.is_zero() {
        return Err(PadicError::ZeroPolynomial);
    }
    let k = a.trailing_zero_order();
    let stripped = IntPoly::new(a.coeffs()[k..].to_vec());
    let pts: Vec<(i64, i64)> = stripped
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, vp_int(c, p).finite().expect("nonzero coefficient")))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let a0 = hull[hull.len() - 2];
            let a1 = hull[hull.len() - 1];
            let cross = (a1.0 - a0.0) as i128 * (q.1 - a0.1) as i128
                - (q.0 - a0.0) as i128 * (a1.1 - a0.1) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let dx = w[1].0 - w[0].0;
            let dy = w[1].1 - w[0].1;
            (
                Rational::new(BigInt::from(dy), BigInt::from(dx)),
                dx as usize,
            )
        })
        .collect();
    Ok(NewtonPolygon {
        segments,
        zero_root_multiplicity: k,
    })
}

/// Exact count of Q_p-rational roots of a squarefree polynomial, split by
/// integrality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCount {
    pub prime: Prime,
    pub roots_in_zp: usize,
    pub roots_outside_zp: usize,
    pub total: usize,
}

fn coeffs_mod(a: &IntPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    a.coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect()
}

fn horner_mod(cs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc: u128 = 0;
    for &c in cs.iter().rev() {
        acc = (acc * x as u128 + c as u128) % p as u128;
    }
    acc as u64
}

/// Z_p roots of a primitive squarefree polynomial by residue recursion.
///
/// For each residue r with a(r) ≡ 0 mod p: a simple root of the reduction
/// lifts uniquely (Hensel); otherwise substitute x = r + p·y, strip content
/// and recurse. A chain of k substitutions forces two roots congruent to
/// depth k-1, so v_p(disc) + 1 levels always suffice.
fn zp_roots_recursive(a: &IntPoly, p: Prime, depth: i64, budget: i64) -> Result<usize, PadicError> {
    let pu = p.get();
    let cs = coeffs_mod(a, pu);
    let ds = coeffs_mod(&a.derivative(), pu);
    let mut count = 0;
    for r in 0..pu {
        if horner_mod(&cs, r, pu) != 0 {
            continue;
        }
        if horner_mod(&ds, r, pu) != 0 {
            count += 1;
            continue;
        }
        if depth <= 0 {
            return Err(PadicError::DepthExceeded { budget });
        }
        let shifted = a.compose(&IntPoly::new(vec![BigInt::from(r), p.to_bigint()]));
        count += zp_roots_recursive(&shifted.primitive_part(), p, depth - 1, budget)?;
    }
    Ok(count)
}

fn zp_root_count(a: &IntPoly, p: Prime) -> Result<usize, PadicError> {
    match a.degree() {
        None | Some(0) => return Ok(0),
        _ => {}
    }
    let disc = a.discriminant()?;
    let budget = vp_int(&disc, p)
        .finite()
        .ok_or(PadicError::NotSquarefree)?
        + 1;
    zp_roots_recursive(a, p, budget, budget)
}

pub fn count_qp_roots(a: &IntPoly, p: Prime) -> Result<RootCount, PadicError> {
    if a.is_zero() {
        return Err(PadicError::ZeroPolynomial);
    }
    let prim = a.primitive_part();
    if !prim.is_squarefree() {
        return Err(PadicError::NotSquarefree);
    }
    let roots_in_zp = zp_root_count(&prim, p)?;
    // Roots of negative valuation are reciprocal to the reversed
    // polynomial's roots in pZ_p; zoom into that disk and count there.
    let rev = prim.reverse();
    let roots_outside_zp = match rev.degree() {
        None | Some(0) => 0,
        _ => {
            let zoomed = rev.compose(&IntPoly::monomial(p.to_bigint(), 1));
            zp_root_count(&zoomed.primitive_part(), p)?
        }
    };
    Ok(RootCount {
        prime: p,
        roots_in_zp,
        roots_outside_zp,
        total: roots_in_zp + roots_outside_zp,
    })
}

/// True iff every root of `a` in an algebraic closure already lies in Q_p.
///
/// Multiplicities are irrelevant, so the squarefree part is counted. When a
/// projective degree is supplied (preimage polynomials of maps can drop
/// degree), the deficit sits at infinity in P^1(Q_p) and never obstructs.
pub fn splits_completely(
    a: &IntPoly,
    p: Prime,
    projective_degree: Option<usize>,
) -> Result<bool, PadicError> {
    if a.is_zero() {
        return Err(PadicError::ZeroPolynomial);
    }
    let deg = a.degree().unwrap_or(0);
    if let Some(d) = projective_degree {
        if d < deg {
            return Err(PadicError::ProjectiveDegreeTooSmall {
                given: d,
                actual: deg,
            });
        }
    }
    let sf = a.squarefree_part()?;
    let sf_deg = match sf.degree() {
        None | Some(0) => return Ok(true),
        Some(d) => d,
    };
    Ok(count_qp_roots(&sf, p)?.total == sf_deg)
}

/// Membership test for the maximal totally p-adic field: an algebraic number
/// lies in it iff its minimal polynomial splits completely over Q_p.
pub fn is_totally_padic(minpoly: &IntPoly, p: Prime) -> Result<bool, PadicError> {
    splits_completely(minpoly, p, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn polygon_frozen_examples() {
        let np = newton_polygon(&ip(&[2, -3, 1]), pr(2)).unwrap();
        assert_eq!(np.segments, vec![(q(-1, 1), 1), (q(0, 1), 1)]);
        assert_eq!(np.zero_root_multiplicity, 0);

        let np = newton_polygon(&ip(&[-2, 0, 1]), pr(2)).unwrap();
        assert_eq!(np.segments, vec![(q(-1, 2), 2)]);

        let np = newton_polygon(&ip(&[1, 1]), pr(3)).unwrap();
        assert_eq!(np.segments, vec![(q(0, 1), 1)]);

        // x(x-1)(x-2): the zero root splits off first
        let np = newton_polygon(&ip(&[0, 2, -3, 1]), pr(2)).unwrap();
        assert_eq!(np.zero_root_multiplicity, 1);
        assert_eq!(np.segments, vec![(q(-1, 1), 1), (q(0, 1), 1)]);

        assert!(matches!(
            newton_polygon(&IntPoly::zero(), pr(2)),
            Err(PadicError::ZeroPolynomial)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn polygon_lengths_cover_degree(
            coeffs in proptest::collection::vec(-50i64..=50, 1..=9),
            p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)],
        ) {
            let a = ip(&coeffs);
            prop_assume!(!a.is_zero());
            let np = newton_polygon(&a, pr(p)).unwrap();
            prop_assert_eq!(np.total_length(), a.degree().unwrap());
            for w in np.segments.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
        }
    }

    #[test]
    fn root_count_frozen_examples() {
        let c = count_qp_roots(&ip(&[0, -1, 1]), pr(2)).unwrap();
        assert_eq!((c.roots_in_zp, c.roots_outside_zp, c.total), (2, 0, 2));
        assert_eq!(count_qp_roots(&ip(&[1, 0, 1]), pr(5)).unwrap().total, 2);
        assert_eq!(count_qp_roots(&ip(&[1, 0, 1]), pr(3)).unwrap().total, 0);
        assert_eq!(count_qp_roots(&ip(&[-2, 0, 1]), pr(2)).unwrap().total, 0);
        assert_eq!(count_qp_roots(&ip(&[-18, -1, 1]), pr(2)).unwrap().total, 2);
    }

    #[test]
    fn root_count_outside_zp() {
        // 2x - 1 has the single root 1/2
        let c = count_qp_roots(&ip(&[-1, 2]), pr(2)).unwrap();
        assert_eq!((c.roots_in_zp, c.roots_outside_zp), (0, 1));
        // (2x-1)(x-1) mixes both kinds
        let c = count_qp_roots(&ip(&[1, -3, 2]), pr(2)).unwrap();
        assert_eq!((c.roots_in_zp, c.roots_outside_zp, c.total), (1, 1, 2));
        // at p=3 both roots are integral
        let c = count_qp_roots(&ip(&[1, -3, 2]), pr(3)).unwrap();
        assert_eq!((c.roots_in_zp, c.roots_outside_zp), (2, 0));
    }

    #[test]
    fn root_count_deep_recursion() {
        // roots 1 and 9 agree mod 8, forcing three substitution levels
        let c = count_qp_roots(&ip(&[9, -10, 1]), pr(2)).unwrap();
        assert_eq!(c.total, 2);
        // roots 1, 9, -3 all lie in the residue class 1 mod 2
        let a = &(&ip(&[-1, 1]) * &ip(&[-9, 1])) * &ip(&[3, 1]);
        assert_eq!(count_qp_roots(&a, pr(2)).unwrap().total, 3);
    }

    #[test]
    fn root_count_rejects_bad_input() {
        assert!(matches!(
            count_qp_roots(&IntPoly::zero(), pr(2)),
            Err(PadicError::ZeroPolynomial)
        ));
        assert!(matches!(
            count_qp_roots(&ip(&[0, 0, 1]), pr(2)),
            Err(PadicError::NotSquarefree)
        ));
    }

    #[test]
    fn root_count_ignores_constant_scaling() {
        for p in [2u64, 3, 5, 7] {
            for a in [ip(&[-18, -1, 1]), ip(&[1, 0, 1]), ip(&[-1, 2])] {
                let base = count_qp_roots(&a, pr(p)).unwrap();
                for s in [3i64, -1, 10] {
                    let scaled = a.scale(&BigInt::from(s));
                    assert_eq!(count_qp_roots(&scaled, pr(p)).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn splits_frozen_examples() {
        assert!(splits_completely(&ip(&[-18, -1, 1]), pr(2), None).unwrap());
        assert!(splits_completely(&ip(&[12, -1, 1]), pr(3), None).unwrap());
        assert!(!splits_completely(&ip(&[1, 0, 1]), pr(3), None).unwrap());
        assert!(splits_completely(&ip(&[-1, 0, 0, 0, 1]), pr(5), None).unwrap());
        assert!(!splits_completely(&ip(&[-1, 0, 0, 0, 1]), pr(7), None).unwrap());
    }

    #[test]
    fn splits_handles_multiplicity_and_projective_degree() {
        // (x^2 - x)^2 via its squarefree part
        let a = &ip(&[0, -1, 1]) * &ip(&[0, -1, 1]);
        assert!(splits_completely(&a, pr(2), None).unwrap());
        assert!(splits_completely(&ip(&[0, -1, 1]), pr(2), Some(4)).unwrap());
        assert!(matches!(
            splits_completely(&ip(&[0, -1, 1]), pr(2), Some(1)),
            Err(PadicError::ProjectiveDegreeTooSmall { given: 1, actual: 2 })
        ));
        assert!(splits_completely(&ip(&[7]), pr(3), None).unwrap());
    }

    #[test]
    fn totally_padic_examples() {
        for p in [2u64, 3, 5, 7, 11] {
            assert!(is_totally_padic(&ip(&[-5, 1]), pr(p)).unwrap());
        }
        assert!(is_totally_padic(&ip(&[-18, -1, 1]), pr(2)).unwrap());
        assert!(!is_totally_padic(&ip(&[1, 0, 1]), pr(3)).unwrap());
    }

    /// Independent quadratic oracle at odd p: when p divides neither the
    /// leading coefficient nor the discriminant, both roots lie in Q_p iff
    /// the discriminant is a quadratic residue (Euler's criterion).
    #[test]
    fn quadratic_euler_oracle() {
        for p in [3u64, 5, 7, 11] {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    let a = ip(&[c, b, 1]);
                    let disc = b * b - 4 * c;
                    if disc == 0 || disc.unsigned_abs() % p == 0 {
                        continue;
                    }
                    let d = disc.rem_euclid(p as i64) as u64;
                    let mut pow = 1u64;
                    for _ in 0..(p - 1) / 2 {
                        pow = pow * d % p;
                    }
                    let expect = pow == 1;
                    assert_eq!(
                        splits_completely(&a, pr(p), None).unwrap(),
                        expect,
                        "x^2+{b}x+{c} at p={p}"
                    );
                }
            }
        }
    }

    /// 2-adic squares are 4^a * (8k+1); exercises the substitution branch,
    /// where the reduction mod 2 never separates the two roots.
    #[test]
    fn quadratic_two_adic_oracle() {
        let is_square_2adic = |m: i64| {
            let v = m.trailing_zeros();
            let u = m >> v;
            v % 2 == 0 && u.rem_euclid(8) == 1
        };
        for b in -8i64..=8 {
            for c in -8i64..=8 {
                let disc = b * b - 4 * c;
                if disc == 0 {
                    continue;
                }
                let a = ip(&[c, b, 1]);
                assert_eq!(
                    splits_completely(&a, pr(2), None).unwrap(),
                    is_square_2adic(disc),
                    "x^2+{b}x+{c} at p=2"
                );
            }
        }
    }
}
