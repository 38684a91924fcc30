//! Mahler-measure heights via deterministic simultaneous root refinement.

use super::{HeightEstimate, HeightError, Method};
use crate::numeric::{big_shifted_iv, log_big};
use crate::poly::{IntPoly, PolyError};
use num_complex::Complex64;
use num_traits::{Signed, Zero};

const TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 400;

/// Coefficients divided by a common power of two so the largest lands near
/// 2^500; a constant rescaling leaves the roots untouched.
fn scaled_coeffs(a: &IntPoly) -> Vec<f64> {
    let maxbits = a
        .coeffs()
        .iter()
        .map(|c| c.bits())
        .max()
        .unwrap_or(1) as i64;
    let drop = (maxbits - 500).max(0);
    a.coeffs()
        .iter()
        .map(|c| big_shifted_iv(c, drop).mid())
        .collect()
}

fn horner(cs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in cs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Largest relative backward error |p(z)| / sum |c_i||z|^i over the roots.
fn worst_residual(cs: &[f64], roots: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for &z in roots {
        let mut scale = 0.0f64;
        let mut pw = 1.0f64;
        for &c in cs {
            scale += c.abs() * pw;
            pw *= z.norm();
        }
        let rel = horner(cs, z).norm() / (scale + f64::MIN_POSITIVE);
        worst = worst.max(rel);
    }
    worst
}

fn aberth_roots(cs: &[f64]) -> Result<Vec<Complex64>, HeightError> {
    let n = cs.len() - 1;
    let deriv: Vec<f64> = (1..=n).map(|i| i as f64 * cs[i]).collect();
    let mut radius = (cs[0].abs() / cs[n].abs()).powf(1.0 / n as f64);
    if !radius.is_finite() || radius == 0.0 {
        radius = 1.0;
    }
    radius = radius.clamp(1e-6, 1e6);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut moved = 0.0f64;
        for j in 0..n {
            let p = horner(cs, z[j]);
            let dp = horner(&deriv, z[j]);
            if dp.norm() == 0.0 {
                z[j] *= Complex64::new(1.0 + 1e-8, 1e-8);
                moved = f64::INFINITY;
                continue;
            }
            let w = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for (k, &zk) in z.iter().enumerate() {
                if k != j {
                    let diff = z[j] - zk;
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let delta = if denom.norm() > 1e-290 { w / denom } else { w };
            z[j] -= delta;
            moved = moved.max(delta.norm() / (1.0 + z[j].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    let residual = worst_residual(cs, &z);
    if residual > TOL {
        return Err(HeightError::RootFinderStalled { residual });
    }
    Ok(z)
}

/// Height of the root set of a squarefree polynomial through the Mahler
/// measure: (log|lc| + sum of log+ of the complex root moduli) / degree.
/// For an irreducible input this is the height of any one root; reducible
/// inputs give the degree-weighted average over distinct roots.
pub fn mahler_height(a: &IntPoly) -> Result<HeightEstimate, HeightError> {
    let deg = match a.degree() {
        None => return Err(HeightError::Poly(PolyError::ZeroPolynomial)),
        Some(0) => return Err(HeightError::Poly(PolyError::ConstantPolynomial)),
        Some(d) => d,
    };
    if !a.is_squarefree() {
        return Err(HeightError::InputNotSquarefree);
    }
    let k = a.trailing_zero_order();
    let body = IntPoly::new(a.coeffs()[k..].to_vec());
    let lc_ln = log_big(&a.leading().unwrap().abs());
    let n = body.degree().unwrap();
    let (sum_lnplus, spread) = if n == 0 {
        (0.0, 0.0)
    } else if n == 1 {
        // rational root -c0/c1 handled by exact logs
        let c0 = log_big(&body.coeff(0).abs());
        let c1 = log_big(&body.coeff(1).abs());
        ((c0 - c1).max(0.0), 1e-13)
    } else {
        let roots = aberth_roots(&scaled_coeffs(&body))?;
        let sum = roots.iter().map(|z| z.norm().max(1.0).ln()).sum();
        (sum, n as f64 * 1e-11)
    };
    let value = (lc_ln + sum_lnplus) / deg as f64;
    Ok(HeightEstimate {
        value,
        error: (spread + 1e-13 * (1.0 + value.abs())) / deg as f64,
        method: Method::MahlerNumeric,
    })
}
