//! Cotangent-sum evaluation of the signature with certified rounding.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_arith::{round_to_integer, CertifiedReal, PrecisionPolicy, TrigContext};

fn insufficient(precision: u32) -> Error {
    Error::AmbiguousRounding {
        lower: format!("<{precision} bits>"),
        upper: "cotangent not separated from its pole".into(),
    }
}

/// `cot(pi (2j+1) / 2a)` for `j = 0..a`. The sequence is `a`-periodic in `j`
/// and antisymmetric under `j -> a-1-j`, so only half is evaluated.
pub(crate) fn cot_table(ctx: &TrigContext, a: u64) -> Result<Vec<CertifiedReal>> {
    let half = a.div_ceil(2);
    let den = 2 * a;
    let firsts: Vec<CertifiedReal> = (0..half)
        .into_par_iter()
        .map(|j| {
            ctx.cot_pi(2 * j as i64 + 1, den)
                .ok_or_else(|| insufficient(ctx.precision()))
        })
        .collect::<Result<_>>()?;
    let mut table = Vec::with_capacity(a as usize);
    table.extend(firsts.iter().cloned());
    for j in half..a {
        table.push(firsts[(a - 1 - j) as usize].neg());
    }
    Ok(table)
}

/// Certified enclosure of
/// `(-1)^(n/2) / N * sum_{j<N} cot(pi(2j+1)/2N) prod_i cot(pi(2j+1)/2a_i)`.
pub(crate) fn zagier_enclosure(
    exponents: &[u64],
    modulus: u64,
    precision: u32,
) -> Result<CertifiedReal> {
    let ctx = TrigContext::new(precision);
    // distinct exponent -> multiplicity
    let mut multiplicity: BTreeMap<u64, u32> = BTreeMap::new();
    for &a in exponents {
        *multiplicity.entry(a).or_default() += 1;
    }
    let mut tables: BTreeMap<u64, Vec<CertifiedReal>> = BTreeMap::new();
    for &a in multiplicity.keys() {
        // cot(pi/4) = 1 and cot(3pi/4) = -1 are handled as signs below
        if a != 2 {
            tables.insert(a, cot_table(&ctx, a)?);
        }
    }
    if let std::collections::btree_map::Entry::Vacant(e) = tables.entry(modulus) {
        e.insert(cot_table(&ctx, modulus)?);
    }
    let quadratic_count = multiplicity.get(&2).copied().unwrap_or(0);
    let factors: Vec<(&Vec<CertifiedReal>, u64, u32)> = multiplicity
        .iter()
        .filter(|(&a, _)| a != 2)
        .map(|(&a, &m)| (&tables[&a], a, m))
        .collect();
    let base = &tables[&modulus];

    let zero = CertifiedReal::from_integer(0, precision);
    let sum = (0..modulus)
        .into_par_iter()
        .fold(
            || zero.clone(),
            |acc, j| {
                let mut term = base[j as usize].clone();
                for &(table, a, m) in &factors {
                    let c = &table[(j % a) as usize];
                    for _ in 0..m {
                        term = term.mul(c);
                    }
                }
                if quadratic_count % 2 == 1 && j % 2 == 1 {
                    term = term.neg();
                }
                acc.add(&term)
            },
        )
        .reduce(|| zero.clone(), |a, b| a.add(&b));

    let n = exponents.len() - 1;
    let signed = if (n / 2) % 2 == 1 { sum.neg() } else { sum };
    Ok(signed.div_int(modulus as i64))
}

pub(crate) struct ZagierValue {
    pub value: BigInt,
    pub precision_bits: u32,
}

pub(crate) fn zagier_signature(
    exponents: &[u64],
    modulus: u64,
    policy: &PrecisionPolicy,
) -> Result<ZagierValue> {
    let (value, precision_bits) = policy.escalate(|bits| {
        let enclosure = zagier_enclosure(exponents, modulus, bits)?;
        round_to_integer(&enclosure)
    })?;
    Ok(ZagierValue {
        value,
        precision_bits,
    })
}
