//! The paired signatures `t_d`, `t_2d` of `(2(2k+1), 2k+1, 2, ..., 2)` and
//! `(4(2k+1), 2k+1, 2, ..., 2)`, and `tau_k = |t_2d - t_d| / 8`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{signature_with, zagier::cot_table, SignatureOptions};
use crate::error::{Error, Result};
use crate::exact_arith::{round_to_integer, CertifiedReal, PrecisionPolicy, TrigContext};

fn paired_exponents(k: u32, n: u32, multiple: u64) -> Vec<u64> {
    let q = 2 * k as u64 + 1;
    let mut exps = vec![2 * multiple * q, q];
    exps.resize(n as usize + 1, 2);
    exps
}

fn check_pair_args(k: u32, n: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "n must be even and at least 2, got {n}"
        )));
    }
    Ok(())
}

/// `(t_d, t_2d)` on `n + 1` variables, default options.
pub fn t_pair(k: u32, n: u32) -> Result<(BigInt, BigInt)> {
    t_pair_with(k, n, &SignatureOptions::default())
}

pub fn t_pair_with(k: u32, n: u32, opts: &SignatureOptions) -> Result<(BigInt, BigInt)> {
    check_pair_args(k, n)?;
    let t_d = signature_with(&paired_exponents(k, n, 1), None, opts)?.value;
    let t_2d = signature_with(&paired_exponents(k, n, 2), None, opts)?.value;
    Ok((t_d, t_2d))
}

/// `|t_2d - t_d| / 8` from the two signatures on `n + 1` variables.
pub fn tau_via_signatures(k: u32, n: u32, opts: &SignatureOptions) -> Result<BigInt> {
    let (t_d, t_2d) = t_pair_with(k, n, opts)?;
    let diff = &t_2d - &t_d;
    let (quot, rem) = diff.div_rem(&BigInt::from(8));
    if !rem.is_zero() {
        return Err(Error::NotDivisibleBy8 {
            difference: diff.to_string(),
        });
    }
    Ok(quot.abs())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauEvaluation {
    pub value: BigInt,
    pub precision_bits: u32,
}

/// `tau_k` from the single cotangent sum
/// `(64k+32) tau_k = sum_{j<8k+4} (-1)^j c(16k+8) (c(16k+8) - c(8k+4)) c(4k+2)`
/// with `c(m) = cot(pi (2j+1) / m)`.
pub fn tau_closed_form(k: u32, policy: &PrecisionPolicy) -> Result<TauEvaluation> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let k = k as u64;
    let (value, precision_bits) = policy.escalate(|bits| {
        let enclosure = tau_enclosure(k, bits)?;
        round_to_integer(&enclosure)
    })?;
    Ok(TauEvaluation {
        value: value.abs(),
        precision_bits,
    })
}

fn tau_enclosure(k: u64, precision: u32) -> Result<CertifiedReal> {
    let ctx = TrigContext::new(precision);
    let terms = 8 * k + 4;
    let c16 = cot_table(&ctx, 8 * k + 4)?;
    let c8 = cot_table(&ctx, 4 * k + 2)?;
    let c4 = cot_table(&ctx, 2 * k + 1)?;
    let mut sum = CertifiedReal::from_integer(0, precision);
    for j in 0..terms {
        let a = &c16[j as usize];
        let b = &c8[(j % (4 * k + 2)) as usize];
        let c = &c4[(j % (2 * k + 1)) as usize];
        let term = a.mul(&a.sub(b)).mul(c);
        sum = if j % 2 == 0 {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
    }
    Ok(sum.div_int(64 * k as i64 + 32))
}

/// `tau_k` by the closed-form cotangent sum at the default precision policy.
pub fn tau(k: u32) -> Result<BigInt> {
    Ok(tau_closed_form(k, &PrecisionPolicy::default())?.value)
}
