//! Dense integer polynomials, enough for characteristic polynomials and
//! cyclotomic factors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t^m - 1`
    pub fn x_pow_minus_one(m: usize) -> Self {
        let mut c = vec![BigInt::zero(); m + 1];
        c[0] = -BigInt::one();
        c[m] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u64) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Exact division by a monic polynomial. Returns `None` on a remainder.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some(IntPoly::new(Vec::new()));
        };
        if nd < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &lead * c;
            }
            quot[i] = lead;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntPoly{:?}",
            self.coeffs
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        )
    }
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: usize) -> IntPoly {
    assert!(m >= 1);
    let mut p = IntPoly::x_pow_minus_one(m);
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p
                .div_exact_monic(&cyclotomic(d))
                .expect("cyclotomic factor divides t^m - 1");
        }
    }
    p
}

/// Characteristic polynomial `det(t I - A)` by Faddeev-LeVerrier. All the
/// divisions are exact over the integers.
pub fn charpoly(a: &IntMatrix) -> IntPoly {
    assert!(
        a.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = a.rows();
    // coefficients c_n = 1, c_{n-1}, ..., c_0
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = &(a * &m) + &IntMatrix::identity(n).scale(&c[n - k + 1]);
        let tr = (a * &m).trace();
        let (q, r) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        c[n - k] = q;
    }
    IntPoly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        // first coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).coeffs().contains(&BigInt::from(-2)));
    }

    #[test]
    fn charpoly_of_companion() {
        for a in 2..9 {
            let c = IntMatrix::cyclotomic_companion(a);
            let expect = IntPoly::new(vec![BigInt::one(); a]);
            assert_eq!(charpoly(&c), expect, "a={a}");
        }
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(charpoly(&m), IntPoly::from_i64(&[5, -5, 1]));
    }

    #[test]
    fn division() {
        let p = cyclotomic(3).mul(&cyclotomic(4));
        assert_eq!(p.div_exact_monic(&cyclotomic(4)), Some(cyclotomic(3)));
        assert_eq!(p.div_exact_monic(&cyclotomic(5)), None);
    }
}
