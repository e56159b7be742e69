use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{bernoulli, numerator_of, Rational};

/// Order prose sources quote for `|bP_20|`; the product formula gives twice it.
const QUOTED_BP20: u64 = 130_816;

/// `|bP_{4m}| = 2^(2m-2) (2^(2m-1) - 1) numerator(4 B_m / m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpOrder {
    pub m: u32,
    #[serde(with = "crate::cli::bigint_string")]
    pub order: BigInt,
    #[serde(with = "crate::cli::bigint_string")]
    pub power_of_two: BigInt,
    #[serde(with = "crate::cli::bigint_string")]
    pub mersenne: BigInt,
    #[serde(with = "crate::cli::bigint_string")]
    pub bernoulli_numerator: BigInt,
    /// Set when a commonly quoted value disagrees with the formula.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discrepancy: Option<String>,
}

/// `|bP_{4m}|` with the exact Bernoulli numbers.
pub fn bp_order(m: u32) -> Result<BpOrder> {
    bp_order_from(m, bernoulli)
}

/// `|bP_{4m}|` with an arbitrary source for `B_m` (topologist indexing).
pub fn bp_order_from<F>(m: u32, bernoulli_source: F) -> Result<BpOrder>
where
    F: Fn(u32) -> Result<Rational>,
{
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "bP_4m needs m >= 2, got m={m}"
        )));
    }
    let b = bernoulli_source(m)?;
    let q = Rational::from(4) * b / Rational::from(m as i64);
    let bernoulli_numerator = numerator_of(&q).abs();
    let power_of_two = BigInt::one() << (2 * m - 2);
    let mersenne = (BigInt::one() << (2 * m - 1)) - 1;
    let order = &power_of_two * &mersenne * &bernoulli_numerator;
    let discrepancy = (m == 5 && order != BigInt::from(QUOTED_BP20)).then(|| {
        format!("formula gives {order}; the value {QUOTED_BP20} is also quoted for |bP_20|")
    });
    Ok(BpOrder {
        m,
        order,
        power_of_two,
        mersenne,
        bernoulli_numerator,
        discrepancy,
    })
}

/// What is known about `bP_{4m+2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum KervaireStatus {
    Trivial,
    Z2,
    Unknown,
}

impl fmt::Display for KervaireStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KervaireStatus::Trivial => "0",
            KervaireStatus::Z2 => "Z_2",
            KervaireStatus::Unknown => "unknown",
        })
    }
}

/// `bP_{4m+2}`: trivial for `m = 1, 3, 7, 15`, `Z_2` unless `m = 2^i - 1`,
/// undecided for the remaining `m = 2^i - 1`.
pub fn bp_order_4m_plus_2(m: u32) -> Result<KervaireStatus> {
    if m == 0 {
        return Err(Error::InvalidArgument("bP_4m+2 needs m >= 1".into()));
    }
    Ok(if matches!(m, 1 | 3 | 7 | 15) {
        KervaireStatus::Trivial
    } else if !(m + 1).is_power_of_two() {
        KervaireStatus::Z2
    } else {
        KervaireStatus::Unknown
    })
}
