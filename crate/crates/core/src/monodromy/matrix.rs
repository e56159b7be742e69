use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone().into();
        }
        m
    }

    /// Companion matrix of `1 + t + ... + t^(a-1)`, size `a - 1`. Its
    /// eigenvalues are the nontrivial `a`-th roots of unity.
    pub fn cyclotomic_companion(a: usize) -> Self {
        assert!(a >= 2, "exponent must be at least 2");
        let n = a - 1;
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.data[i * n + (i - 1)] = BigInt::one();
        }
        for i in 0..n {
            m.data[i * n + (n - 1)] = -BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub(crate) fn entry_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Kronecker product `self (x) other`.
    pub fn kronecker(&self, other: &IntMatrix) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `I + M + ... + M^(k-1)` by doubling.
    pub fn geometric_sum(&self, k: u64) -> Self {
        assert!(self.is_square(), "geometric sum of a non-square matrix");
        let n = self.rows;
        // invariant: sum = S_m, power = M^m for the prefix m of k's bits
        let mut sum = Self::zeros(n, n);
        let mut power = Self::identity(n);
        for bit in (0..64 - k.leading_zeros()).rev() {
            sum = &sum + &(&power * &sum);
            power = &power * &power;
            if (k >> bit) & 1 == 1 {
                sum = &Self::identity(n) + &(self * &sum);
                power = self * &power;
            }
        }
        sum
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "dimension mismatch"
        );
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_of_three() {
        let c = IntMatrix::cyclotomic_companion(3);
        assert_eq!(c, IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]));
        assert!(c.pow(3).is_identity());
        assert!(!c.pow(2).is_identity());
    }

    #[test]
    fn geometric_sum_matches_naive() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 0], vec![-1, 0, 3], vec![2, 1, 1]]);
        let mut naive = IntMatrix::zeros(3, 3);
        let mut p = IntMatrix::identity(3);
        for k in 0..12u64 {
            assert_eq!(m.geometric_sum(k), naive, "k={k}");
            naive = &naive + &p;
            p = &p * &m;
        }
    }

    #[test]
    fn kronecker_shapes_and_entries() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 5], vec![6, 7]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(1, 3), &BigInt::from(14));
        assert_eq!(k.get(3, 2), &BigInt::from(24));
        assert_eq!(k.trace(), a.trace() * b.trace());
    }
}
