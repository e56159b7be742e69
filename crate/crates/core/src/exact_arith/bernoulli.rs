//! Bernoulli numbers over exact rationals.
//!
//! The table is stored in the modern convention (`B_1 = -1/2`, odd indices
//! above 1 vanish). [`bernoulli`] exposes the older topological indexing used
//! by the Kervaire-Milnor order formula, where `B_m` is `|B_{2m}|` in modern
//! terms: `B_1 = 1/6`, `B_2 = 1/30`, `B_3 = 1/42`, ...

use num_bigint::BigInt;
use num_traits::One;

use super::Rational;
use crate::error::{Error, Result};

/// Modern Bernoulli numbers `B_0, ..., B_len-1`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    modern: Vec<Rational>,
}

impl BernoulliTable {
    /// Computes `B_0..=B_max_index` from `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
    pub fn up_to(max_index: usize) -> Self {
        let mut modern: Vec<Rational> = Vec::with_capacity(max_index + 1);
        modern.push(Rational::one());
        // binomial row C(n+1, 0..=n+1), updated in place
        let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        for n in 1..=max_index {
            let mut next = vec![BigInt::one(); n + 2];
            for k in 1..=n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            let mut acc = Rational::zero();
            for (k, b) in modern.iter().enumerate() {
                acc = acc + Rational::from_integer(row[k].clone()) * b;
            }
            let b_n = -(acc / Rational::from_integer(BigInt::from(n + 1)));
            modern.push(b_n);
        }
        BernoulliTable { modern }
    }

    pub fn len(&self) -> usize {
        self.modern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modern.is_empty()
    }

    /// Modern `B_index`, or `None` past the end of the table.
    pub fn modern(&self, index: usize) -> Option<&Rational> {
        self.modern.get(index)
    }

    /// Topological `B_m = |B_2m|`, or `None` if not tabulated.
    pub fn topological(&self, m: usize) -> Option<Rational> {
        if m == 0 {
            return None;
        }
        self.modern.get(2 * m).map(Rational::abs)
    }
}

/// The `m`-th Bernoulli number in topological indexing (`m >= 1`).
pub fn bernoulli(m: u32) -> Result<Rational> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "Bernoulli index must be at least 1".into(),
        ));
    }
    let table = BernoulliTable::up_to(2 * m as usize);
    Ok(table
        .topological(m as usize)
        .expect("table covers index 2m"))
}
