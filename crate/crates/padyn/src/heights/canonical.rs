//! Certified canonical heights for rational points.
//!
//! The estimate telescopes the height defect along the orbit:
//!
//!   h(f^N P)/d^N = h(P) + sum_{i<N} delta_i / d^{i+1},
//!   delta_i = h(f^{i+1} P) - d h(f^i P),
//!
//! and |hhat - h(f^N P)/d^N| <= C/(d^N (d-1)) with C the comparison
//! constant. Early orbit points are tracked exactly; once their size
//! crosses a bit cap the increments delta_i switch to validated float
//! intervals over a normalized coordinate pair, with the coprimality gcd
//! recovered from residues modulo a power of the resultant. Every rounding
//! is absorbed into the reported error radius.

use super::{height_bound_constant, HeightEstimate, HeightError, Method};
use crate::numeric::{big_shifted_iv, log_big_iv, Iv};
use crate::ratmap::{ProjPoint, RationalMap};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;

const BITS_LADDER: [u64; 4] = [4096, 32768, 262_144, 1_048_576];

fn point_bits(p: &ProjPoint) -> u64 {
    match p {
        ProjPoint::Infinity => 1,
        ProjPoint::Finite(x) => x.numer().bits().max(x.denom().bits()),
    }
}

fn homog(cs: &[Iv], d: usize, u: Iv, v: Iv) -> Iv {
    let mut upow = vec![Iv::exact(1.0); d + 1];
    let mut vpow = vec![Iv::exact(1.0); d + 1];
    for i in 1..=d {
        upow[i] = upow[i - 1].mul(u);
        vpow[i] = vpow[i - 1].mul(v);
    }
    let mut acc = Iv::exact(0.0);
    for (i, &c) in cs.iter().enumerate() {
        if c.lo == 0.0 && c.hi == 0.0 {
            continue;
        }
        acc = acc.add(c.mul(upow[i]).mul(vpow[d - i]));
    }
    acc
}

enum Outcome {
    Exact(HeightEstimate),
    Estimate(HeightEstimate),
}

fn attempt(
    f: &RationalMap,
    p: &ProjPoint,
    c: f64,
    n_total: u32,
    bits_cap: u64,
) -> Result<Outcome, HeightError> {
    let d = f.degree();
    let df = d as f64;

    // exact orbit prefix; a revisit proves preperiodicity, hence height 0
    let mut q = p.clone();
    let mut seen: HashSet<ProjPoint> = HashSet::new();
    seen.insert(q.clone());
    let mut n0: u32 = 0;
    while n0 < n_total && point_bits(&q) <= bits_cap {
        q = f.apply(&q);
        n0 += 1;
        if !seen.insert(q.clone()) {
            return Ok(Outcome::Exact(HeightEstimate::exact_zero()));
        }
    }
    let n1 = n_total - n0;
    let (a0, b0) = q.lift();
    let m0 = a0.abs().max(b0.abs());
    let h0 = if m0.is_one() {
        Iv::exact(0.0)
    } else {
        log_big_iv(&m0)
    };

    // gcd corrections live modulo a power of the resultant, since the gcd
    // of the image pair of coprime coordinates always divides it
    let r = f.resultant().abs();
    let track = !r.is_one() && n1 > 0;
    let mut modulus = if track { r.pow(n1 + 2) } else { BigInt::one() };
    let mut ra = if track { a0.mod_floor(&modulus) } else { BigInt::zero() };
    let mut rb = if track { b0.mod_floor(&modulus) } else { BigInt::zero() };

    let s0 = m0.bits() as i64 - 1;
    let mut u = big_shifted_iv(&a0, s0);
    let mut v = big_shifted_iv(&b0, s0);
    let gcoef: Vec<Iv> = (0..=d)
        .map(|i| big_shifted_iv(&f.numerator().coeff(i), 0))
        .collect();
    let hcoef: Vec<Iv> = (0..=d)
        .map(|i| big_shifted_iv(&f.denominator().coeff(i), 0))
        .collect();

    let mut acc = Iv::exact(0.0);
    let mut wt = Iv::exact(1.0);
    let mut stop = n1;
    for i in 0..n1 {
        if !u.is_finite() || !v.is_finite() {
            stop = i;
            break;
        }
        wt = wt.scale_inv(df);
        let m_in = u.abs().max(v.abs());
        let x = homog(&gcoef, d, u, v);
        let y = homog(&hcoef, d, u, v);
        let m_out = x.abs().max(y.abs());

        let mut ln_g = Iv::exact(0.0);
        let mut g_big: Option<BigInt> = None;
        if track {
            let na = f.numerator().eval_homogeneous_mod(d, &ra, &rb, &modulus);
            let nb = f.denominator().eval_homogeneous_mod(d, &ra, &rb, &modulus);
            let g = na.gcd(&nb).gcd(&modulus);
            if g.is_one() {
                ra = na;
                rb = nb;
            } else {
                ra = &na / &g;
                rb = &nb / &g;
                modulus = &modulus / &g;
                ln_g = log_big_iv(&g);
                g_big = Some(g);
            }
        }

        let (li, lo) = match (m_in.ln(), m_out.ln()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                stop = i;
                break;
            }
        };
        let delta = lo.sub(li.mul(Iv::exact(df))).sub(ln_g);
        acc = acc.add(delta.mul(wt));

        let (nu, nv) = if let Some(g) = &g_big {
            let giv = big_shifted_iv(g, 0);
            match (x.div_pos(giv), y.div_pos(giv)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    stop = i + 1;
                    break;
                }
            }
        } else {
            (x, y)
        };
        let mag = nu.abs().max(nv.abs()).mid();
        if !(mag > 0.0) || !mag.is_finite() {
            stop = i + 1;
            break;
        }
        let s = mag.log2().round() as i32;
        u = nu.scale_pow2(-s);
        v = nv.scale_pow2(-s);
    }

    let dn0 = df.powi(n0 as i32);
    if !(dn0.is_finite() && dn0 >= 1.0) {
        return Ok(Outcome::Estimate(HeightEstimate {
            value: 0.0,
            error: f64::INFINITY,
            method: Method::CertifiedIterate,
        }));
    }
    let total = h0.add(acc).scale_inv(dn0);
    let anchor = df.powi((n0 + stop) as i32);
    let tail = c / (anchor * (df - 1.0)) * 1.000_000_1 + 1e-290;
    let error = if total.is_finite() {
        0.5 * total.width() + tail
    } else {
        f64::INFINITY
    };
    Ok(Outcome::Estimate(HeightEstimate {
        value: if total.is_finite() { total.mid() } else { 0.0 },
        error,
        method: Method::CertifiedIterate,
    }))
}

/// Canonical height of a rational point to within eps, certified.
///
/// The returned error radius covers the orbit truncation and every float
/// rounding; it never exceeds eps on success. Preperiodic points short
/// circuit to an exact zero when the orbit revisits a point.
pub fn canonical_height(
    f: &RationalMap,
    p: &ProjPoint,
    eps: f64,
) -> Result<HeightEstimate, HeightError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(HeightError::InvalidTolerance);
    }
    let c = height_bound_constant(f)?.c;
    let d = f.degree() as f64;
    let n_total: u32 = if c <= 0.0 {
        0
    } else {
        let raw = ((c / (0.9 * eps * (d - 1.0))).ln() / d.ln()).ceil();
        if !(raw < 4096.0) {
            return Err(HeightError::PrecisionLimit {
                requested: eps,
                achievable: f64::MIN_POSITIVE,
            });
        }
        raw.max(0.0) as u32
    };

    let mut best = f64::INFINITY;
    for cap in BITS_LADDER {
        match attempt(f, p, c, n_total, cap)? {
            Outcome::Exact(est) => return Ok(est),
            Outcome::Estimate(est) => {
                if est.error <= eps {
                    return Ok(est);
                }
                best = best.min(est.error);
            }
        }
    }
    Err(HeightError::PrecisionLimit {
        requested: eps,
        achievable: best,
    })
}
