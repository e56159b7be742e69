//! Smith normal form over the integers.
//!
//! Pivots are chosen by minimal nonzero absolute value in the remaining
//! submatrix, which keeps intermediate entries small on the sparse, banded
//! matrices produced by the monodromy.

use std::mem;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `left * A * right = diag(diagonal)` with unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// `min(rows, cols)` entries, nonnegative, each dividing the next, zeros last.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_rows(&mut self.a, i, j);
        if let Some(l) = self.left.as_mut() {
            swap_rows(l, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(r) = self.right.as_mut() {
            swap_cols(r, i, j);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        add_row(&mut self.a, target, source, factor);
        if let Some(l) = self.left.as_mut() {
            add_row(l, target, source, factor);
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        add_col(&mut self.a, target, source, factor);
        if let Some(r) = self.right.as_mut() {
            add_col(r, target, source, factor);
        }
    }

    fn negate_row(&mut self, i: usize) {
        negate_row(&mut self.a, i);
        if let Some(l) = self.left.as_mut() {
            negate_row(l, i);
        }
    }

    /// Position of the smallest nonzero |entry| in the submatrix from `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let v = self.a.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((br, bc)) => v.magnitude() < self.a.get(br, bc).magnitude(),
                };
                if better {
                    best = Some((r, c));
                    if v.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let steps = rows.min(cols);
        for t in 0..steps {
            let Some((pr, pc)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let mut dirty = false;
                // clear column t below the pivot
                for r in t + 1..rows {
                    if self.a.get(r, t).is_zero() {
                        continue;
                    }
                    let q = self.a.get(r, t).div_floor(self.a.get(t, t));
                    self.add_row(r, t, &-q);
                    if !self.a.get(r, t).is_zero() {
                        dirty = true;
                    }
                }
                // clear row t right of the pivot
                for c in t + 1..cols {
                    if self.a.get(t, c).is_zero() {
                        continue;
                    }
                    let q = self.a.get(t, c).div_floor(self.a.get(t, t));
                    self.add_col(c, t, &-q);
                    if !self.a.get(t, c).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a remainder is smaller than the pivot; move it in
                    let (pr, pc) = self.min_line_pivot(t);
                    self.swap_rows(t, pr);
                    self.swap_cols(t, pc);
                    continue;
                }
                // pivot must divide the rest of the submatrix
                if let Some(r) = self.non_divisible_row(t) {
                    self.add_row(t, r, &BigInt::one());
                    continue;
                }
                break;
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
        (0..steps).map(|i| self.a.get(i, i).clone()).collect()
    }

    /// Smallest nonzero entry on row t or column t (at or past the pivot).
    fn min_line_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_mag = None;
        let mut consider = |r: usize, c: usize, v: &BigInt| {
            if v.is_zero() {
                return;
            }
            if best_mag.as_ref().is_none_or(|m: &BigInt| v.abs() < *m) {
                best_mag = Some(v.abs());
                best = (r, c);
            }
        };
        for r in t..self.a.rows() {
            consider(r, t, self.a.get(r, t));
        }
        for c in t..self.a.cols() {
            consider(t, c, self.a.get(t, c));
        }
        best
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = self.a.get(t, t);
        for r in t + 1..self.a.rows() {
            for c in t + 1..self.a.cols() {
                if !self.a.get(r, c).is_multiple_of(p) {
                    return Some(r);
                }
            }
        }
        None
    }
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    for c in 0..m.cols() {
        let a = mem::take(m.entry_mut(i, c));
        let b = mem::replace(m.entry_mut(j, c), a);
        *m.entry_mut(i, c) = b;
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for r in 0..m.rows() {
        let a = mem::take(m.entry_mut(r, i));
        let b = mem::replace(m.entry_mut(r, j), a);
        *m.entry_mut(r, i) = b;
    }
}

fn add_row(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let s = m.get(source, c);
        if !s.is_zero() {
            let delta = s * factor;
            *m.entry_mut(target, c) += delta;
        }
    }
}

fn add_col(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for r in 0..m.rows() {
        let s = m.get(r, source);
        if !s.is_zero() {
            let delta = s * factor;
            *m.entry_mut(r, target) += delta;
        }
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for c in 0..m.cols() {
        let v = m.entry_mut(i, c);
        *v = -mem::take(v);
    }
}

/// Diagonal of the Smith normal form, `min(rows, cols)` entries.
pub fn smith_normal_form(matrix: &IntMatrix) -> Vec<BigInt> {
    Reducer {
        a: matrix.clone(),
        left: None,
        right: None,
    }
    .run()
}

/// Smith normal form with the unimodular transforms that produce it.
pub fn smith_decomposition(matrix: &IntMatrix) -> SmithDecomposition {
    let mut reducer = Reducer {
        a: matrix.clone(),
        left: Some(IntMatrix::identity(matrix.rows())),
        right: Some(IntMatrix::identity(matrix.cols())),
    };
    let diagonal = reducer.run();
    SmithDecomposition {
        diagonal,
        left: reducer.left.unwrap(),
        right: reducer.right.unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Determinant by Bareiss fraction-free elimination.
    fn det(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        let mut a = m.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                swap_rows(&mut a, k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    #[test]
    fn examples() {
        assert_eq!(
            smith_normal_form(&IntMatrix::diagonal(&[2, 3])),
            vec![b(1), b(6)]
        );
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)), vec![b(1); 3]);
        assert_eq!(smith_normal_form(&IntMatrix::zeros(1, 1)), vec![b(0)]);
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m), vec![b(2), b(6), b(12)]);
        let rect = IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 4, 0]]);
        assert_eq!(smith_normal_form(&rect), vec![b(4), b(0)]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
    }

    proptest! {
        #[test]
        fn transforms_reproduce_the_diagonal(rows in small_matrix()) {
            let a = IntMatrix::from_rows(&rows);
            let dec = smith_decomposition(&a);
            let product = &(&dec.left * &a) * &dec.right;
            let mut expect = IntMatrix::zeros(a.rows(), a.cols());
            for (i, d) in dec.diagonal.iter().enumerate() {
                expect.set(i, i, d.clone());
            }
            prop_assert_eq!(product, expect);
            prop_assert!(det(&dec.left).magnitude().is_one());
            prop_assert!(det(&dec.right).magnitude().is_one());
            for w in dec.diagonal.windows(2) {
                prop_assert!(!w[0].is_negative());
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
            }
            prop_assert_eq!(smith_normal_form(&a), dec.diagonal);
        }

        #[test]
        fn square_determinant_is_preserved(rows in (1usize..5).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-6i64..7, n), n)
        })) {
            let a = IntMatrix::from_rows(&rows);
            let d: BigInt = smith_normal_form(&a).iter().product();
            prop_assert_eq!(d, det(&a).abs());
        }
    }
}
