//! Fraction-free determinants over an integral domain.

use super::{Coeff, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Division known to be exact in the ambient domain.
pub trait ExactDiv: Sized {
    /// Returns `None` when the division is not exact.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

impl ExactDiv for Polynomial<BigInt> {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        long_div_exact(self, rhs)
    }
}

/// Long division in Z[x] that succeeds only when the remainder is zero
/// and every coefficient step divides exactly.
pub(crate) fn long_div_exact(
    a: &Polynomial<BigInt>,
    b: &Polynomial<BigInt>,
) -> Option<Polynomial<BigInt>> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Polynomial::zero());
    }
    let da = a.degree()?;
    let db = b.degree()?;
    if da < db {
        return None;
    }
    let lcb = b.leading().unwrap().clone();
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = rem.degree() {
        if dr < db {
            return None; // nonzero remainder
        }
        let c = rem.leading().unwrap().exact_div(&lcb)?;
        let k = dr - db;
        rem = &rem - &b.scale(&c).shift_up(k);
        q[k] = c;
    }
    Some(Polynomial::new(q))
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Intermediate divisions are exact over any integral domain; row swaps
/// track the sign. Empty matrices have determinant one.
pub fn bareiss_det<T: Coeff + ExactDiv>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, r);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Sylvester-style matrix of `a` and `b` taken at formal degrees
/// `da` and `db` (coefficient slices may be shorter; missing entries
/// are zero). Size (da + db)^2; determinant is the formal resultant.
pub(crate) fn sylvester_formal<T: Coeff>(
    a: &[T],
    b: &[T],
    da: usize,
    db: usize,
) -> Vec<Vec<T>> {
    let n = da + db;
    let get = |v: &[T], i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
    let mut m = vec![vec![T::zero(); n]; n];
    for row in 0..db {
        for j in 0..=da {
            m[row][row + j] = get(a, da - j);
        }
    }
    for row in 0..da {
        for j in 0..=db {
            m[db + row][row + j] = get(b, db - j);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&c| bi(c)).collect()).collect()
    }

    fn naive_det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return bi(1);
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = bi(0);
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (1..n)
                .map(|i| (0..n).filter(|&k| k != j).map(|k| m[i][k].clone()).collect())
                .collect();
            let term = m[0][j].clone() * naive_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(mat(&[&[2]])), bi(2));
        assert_eq!(bareiss_det(mat(&[&[1, 2], &[3, 4]])), bi(-2));
        assert_eq!(bareiss_det(mat(&[&[0, 1], &[1, 0]])), bi(-1));
        assert_eq!(
            bareiss_det(mat(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
            bi(-1)
        );
        assert_eq!(bareiss_det(mat(&[&[1, 2], &[2, 4]])), bi(0));
        assert_eq!(bareiss_det(Vec::<Vec<BigInt>>::new()), bi(1));
    }

    #[test]
    fn matches_naive_expansion() {
        // fixed pseudo-random 4x4 and 5x5 matrices
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 19) as i64 - 9
        };
        for n in [3usize, 4, 5] {
            for _ in 0..20 {
                let m: Vec<Vec<BigInt>> =
                    (0..n).map(|_| (0..n).map(|_| bi(next())).collect()).collect();
                assert_eq!(bareiss_det(m.clone()), naive_det(&m));
            }
        }
    }

    #[test]
    fn exact_poly_division() {
        let p = |c: &[i64]| Polynomial::new(c.iter().map(|&x| bi(x)).collect());
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]);
        assert_eq!(ExactDiv::exact_div(&a, &b), Some(p(&[-1, 1])));
        assert_eq!(ExactDiv::exact_div(&a, &p(&[2, 2])), None); // content obstruction
        assert_eq!(ExactDiv::exact_div(&p(&[1, 1, 1]), &b), None); // nonzero remainder
        let c = p(&[6, 5, 1]); // (x+2)(x+3)
        assert_eq!(ExactDiv::exact_div(&c, &p(&[2, 1])), Some(p(&[3, 1])));
    }
}
