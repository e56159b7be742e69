use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bp::bp_order;
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::signature::tau;

/// One row: `k`, `tau_k`, `D_n(k)` and `1 / gcd(tau_k, |bP_4n|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: u32,
    #[serde(with = "crate::cli::bigint_string")]
    pub tau: BigInt,
    #[serde(with = "crate::cli::bigint_string")]
    pub count: BigInt,
    pub ratio: Rational,
}

/// `D_n(k) = |bP_4n| / gcd(tau_k, |bP_4n|)`.
pub fn diffeo_count(n: u32, k: u32) -> Result<BigInt> {
    let order = bp_order(n)?.order;
    Ok(count_from(&order, &tau(k)?))
}

fn count_from(order: &BigInt, tau_k: &BigInt) -> BigInt {
    order / tau_k.gcd(order)
}

/// `n` with `dimension = 4n - 1`, `n >= 2`.
pub fn table_n(dimension: u32) -> Result<u32> {
    if dimension < 7 || !(dimension + 1).is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "dimension must be 4n-1 with n >= 2, got {dimension}"
        )));
    }
    Ok((dimension + 1) / 4)
}

/// Rows for the sphere-product family in `dimension = 4n - 1`, in input order.
pub fn table_emit(dimension: u32, k_values: &[u32]) -> Result<Vec<TableRow>> {
    let n = table_n(dimension)?;
    let order = bp_order(n)?.order;
    k_values
        .par_iter()
        .map(|&k| {
            let tau_k = tau(k)?;
            let g = tau_k.gcd(&order);
            Ok(TableRow {
                k,
                count: &order / &g,
                ratio: Rational::new(1, g),
                tau: tau_k,
            })
        })
        .collect()
}
