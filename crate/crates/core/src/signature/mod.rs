//! Signature `t(a)` of the Milnor fibre of `z_0^a_0 + ... + z_n^a_n`, `n` even.
//!
//! Three independent evaluations are provided:
//!
//! * [`signature_lattice`] enumerates the box `0 < x_i < a_i` and compares the
//!   fractional sum `sum x_i / a_i` (mod 2) with the open intervals `(0,1)`
//!   and `(1,2)`;
//! * [`signature_dp`] convolves the per-variable residue distributions modulo
//!   `2N`, `N = lcm(a_i)`;
//! * [`signature_zagier`] evaluates the cotangent sum over `j < N` with
//!   certified intervals and rounds to the unique integer.
//!
//! All three agree exactly wherever they are defined.

mod lattice;
pub(crate) mod residue;
mod tau;
pub(crate) mod zagier;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::PrecisionPolicy;
use crate::link_model::{link_from_unsigned, BrieskornLink};
use crate::Budgets;

pub use tau::{t_pair, t_pair_with, tau, tau_closed_form, tau_via_signatures, TauEvaluation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lattice,
    Dp,
    Zagier,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lattice => "lattice",
            Method::Dp => "dp",
            Method::Zagier => "zagier",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lattice" => Ok(Method::Lattice),
            "dp" => Ok(Method::Dp),
            "zagier" => Ok(Method::Zagier),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Outcome of one signature evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub exponents: Vec<u64>,
    pub method: Method,
    #[serde(with = "crate::cli::bigint_string")]
    pub value: BigInt,
    /// The common multiple `N` used by the cotangent sum.
    pub modulus: Option<u64>,
    /// Precision at which the cotangent sum rounded unambiguously.
    pub precision_bits: Option<u32>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Tunables shared by the signature evaluations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignatureOptions {
    pub budgets: Budgets,
    pub precision: PrecisionPolicy,
    /// Common multiple for the cotangent sum; `lcm(a_i)` when absent.
    pub modulus: Option<u64>,
}

fn even_dimensional_link(exponents: &[u64]) -> Result<BrieskornLink> {
    let link = link_from_unsigned(exponents)?;
    if link.variable_count() % 2 == 0 {
        return Err(Error::OddDimension {
            variables: link.variable_count(),
        });
    }
    Ok(link)
}

/// Signature by direct enumeration, with the default point budget.
pub fn signature_lattice(exponents: &[u64]) -> Result<BigInt> {
    signature_lattice_with_budget(exponents, Budgets::default().lattice_points)
}

pub fn signature_lattice_with_budget(exponents: &[u64], budget: u64) -> Result<BigInt> {
    let link = even_dimensional_link(exponents)?;
    if link.milnor_number() > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "lattice points",
            required: link.milnor_number(),
            budget: budget as u128,
        });
    }
    Ok(BigInt::from(lattice::lattice_count(
        link.exponents(),
        link.degree(),
    )))
}

/// Signature by residue-class convolution, with the default cell budget.
pub fn signature_dp(exponents: &[u64]) -> Result<BigInt> {
    signature_dp_with_budget(exponents, Budgets::default().dp_cells)
}

pub fn signature_dp_with_budget(exponents: &[u64], cell_budget: u64) -> Result<BigInt> {
    let link = even_dimensional_link(exponents)?;
    let dist = residue::residue_distribution(
        link.exponents(),
        link.degree(),
        link.milnor_number(),
        cell_budget,
    )?;
    Ok(BigInt::from(dist.signed_difference()))
}

/// Signature by the cotangent sum with `N = modulus` (default `lcm(a_i)`).
pub fn signature_zagier(exponents: &[u64], modulus: Option<u64>) -> Result<BigInt> {
    let opts = SignatureOptions {
        modulus,
        ..Default::default()
    };
    Ok(signature_with(exponents, Some(Method::Zagier), &opts)?.value)
}

fn zagier_modulus(link: &BrieskornLink, requested: Option<u64>) -> Result<u64> {
    let modulus = requested.unwrap_or(link.degree());
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if let Some(&a) = link
        .exponents()
        .iter()
        .find(|&&a| !modulus.is_multiple_of(a))
    {
        return Err(Error::NotCommonMultiple {
            modulus,
            exponent: a,
        });
    }
    if i64::try_from(2 * modulus as u128).is_err() {
        return Err(Error::InvalidArgument(format!(
            "modulus {modulus} too large"
        )));
    }
    Ok(modulus)
}

/// The method automatic dispatch would pick for these exponents.
pub fn choose_method(link: &BrieskornLink, budgets: &Budgets) -> Method {
    let cells = 2 * link.degree() as u128 * link.variable_count() as u128;
    if link.milnor_number() <= budgets.lattice_auto_threshold.min(budgets.lattice_points) as u128 {
        Method::Lattice
    } else if cells <= budgets.dp_cells as u128 {
        Method::Dp
    } else {
        Method::Zagier
    }
}

/// Signature with the given method (automatic dispatch when `None`).
pub fn signature_with(
    exponents: &[u64],
    method: Option<Method>,
    opts: &SignatureOptions,
) -> Result<SignatureReport> {
    let start = Instant::now();
    let link = even_dimensional_link(exponents)?;
    let method = method.unwrap_or_else(|| choose_method(&link, &opts.budgets));
    let (value, modulus, precision_bits) = match method {
        Method::Lattice => (
            signature_lattice_with_budget(exponents, opts.budgets.lattice_points)?,
            None,
            None,
        ),
        Method::Dp => (
            signature_dp_with_budget(exponents, opts.budgets.dp_cells)?,
            None,
            None,
        ),
        Method::Zagier => {
            let modulus = zagier_modulus(&link, opts.modulus)?;
            let z = zagier::zagier_signature(link.exponents(), modulus, &opts.precision)?;
            (z.value, Some(modulus), Some(z.precision_bits))
        }
    };
    Ok(SignatureReport {
        exponents: exponents.to_vec(),
        method,
        value,
        modulus,
        precision_bits,
        elapsed: start.elapsed(),
    })
}

/// Signature with automatic dispatch and default options.
pub fn signature(exponents: &[u64]) -> Result<BigInt> {
    Ok(signature_with(exponents, None, &SignatureOptions::default())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Rational;
    use proptest::prelude::*;

    /// Brute force over exact rationals, independent of every fast path.
    fn oracle(exponents: &[u64]) -> i64 {
        let mut x: Vec<u64> = vec![1; exponents.len()];
        let two = Rational::from(2);
        let one = Rational::one();
        let mut total = 0i64;
        loop {
            let mut s = Rational::zero();
            for (xi, ai) in x.iter().zip(exponents) {
                s = s + Rational::new(*xi as i64, *ai as i64);
            }
            let r = &s - &(Rational::from_integer((&s / &two).floor()) * &two);
            if r > Rational::zero() && r < one {
                total += 1;
            } else if r > one && r < two {
                total -= 1;
            }
            let mut i = 0;
            loop {
                if i == x.len() {
                    return total;
                }
                if x[i] + 1 < exponents[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = 1;
                i += 1;
            }
        }
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn oracle_values() {
        assert_eq!(oracle(&[2, 2, 2]), -1);
        assert_eq!(oracle(&[6, 3, 2, 2, 2]), 8);
        assert_eq!(oracle(&[12, 3, 2, 2, 2]), 16);
        assert_eq!(oracle(&[6, 3, 2, 2, 2, 2, 2]), -8);
        assert_eq!(oracle(&[4, 4, 2, 2, 2, 2, 2]), -7);
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(signature_lattice(&[2, 2, 2]).unwrap(), b(-1));
        assert_eq!(signature_lattice(&[6, 3, 2, 2, 2]).unwrap(), b(8));
        assert_eq!(signature_lattice(&[12, 3, 2, 2, 2]).unwrap(), b(16));
        assert!(matches!(
            signature_lattice(&[3, 2, 2, 2]),
            Err(Error::OddDimension { variables: 4 })
        ));
        assert!(matches!(
            signature_lattice_with_budget(&[6, 3, 2, 2, 2], 9),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn dp_examples() {
        assert_eq!(signature_dp(&[6, 3, 2, 2, 2]).unwrap(), b(8));
        assert_eq!(signature_dp(&[2, 2, 2]).unwrap(), b(-1));
        assert_eq!(signature_dp(&[4, 4, 2, 2, 2, 2, 2]).unwrap(), b(-7));
        assert!(matches!(
            signature_dp(&[2, 2]),
            Err(Error::OddDimension { .. })
        ));
    }

    #[test]
    fn zagier_examples() {
        assert_eq!(signature_zagier(&[6, 3, 2, 2, 2], Some(6)).unwrap(), b(8));
        assert_eq!(signature_zagier(&[6, 3, 2, 2, 2], Some(12)).unwrap(), b(8));
        assert_eq!(signature_zagier(&[2, 2, 2], None).unwrap(), b(-1));
        assert_eq!(
            signature_zagier(&[6, 3, 2, 2, 2, 2, 2], None).unwrap(),
            b(-8)
        );
        assert_eq!(
            signature_zagier(&[6, 3, 2, 2, 2], Some(9)),
            Err(Error::NotCommonMultiple {
                modulus: 9,
                exponent: 6
            })
        );
        assert!(matches!(
            signature_zagier(&[5, 3], None),
            Err(Error::OddDimension { .. })
        ));
    }

    #[test]
    fn report_records_method_and_precision() {
        let opts = SignatureOptions::default();
        let r = signature_with(&[7, 4, 3], Some(Method::Zagier), &opts).unwrap();
        assert_eq!(r.value, b(-24));
        assert_eq!(r.modulus, Some(84));
        assert_eq!(r.precision_bits, Some(128));
        let auto = signature_with(&[7, 4, 3], None, &opts).unwrap();
        assert_eq!(auto.method, Method::Lattice);
        assert_eq!(auto.modulus, None);
    }

    #[test]
    fn dispatch_thresholds() {
        let budgets = Budgets::default();
        let small = link_from_unsigned(&[6, 3, 2, 2, 2]).unwrap();
        assert_eq!(choose_method(&small, &budgets), Method::Lattice);
        let mid = link_from_unsigned(&[101, 103, 2]).unwrap();
        assert_eq!(choose_method(&mid, &budgets), Method::Dp);
        let tight = Budgets::uniform(1);
        assert_eq!(choose_method(&small, &tight), Method::Zagier);
    }

    #[test]
    fn tiny_starting_precision_escalates() {
        let opts = SignatureOptions {
            precision: PrecisionPolicy {
                start_bits: 8,
                max_bits: 16384,
            },
            ..Default::default()
        };
        let r = signature_with(&[30, 21, 10], Some(Method::Zagier), &opts).unwrap();
        assert_eq!(r.value, BigInt::from(oracle(&[30, 21, 10])));
        assert!(r.precision_bits.unwrap() > 8);
        let capped = SignatureOptions {
            precision: PrecisionPolicy {
                start_bits: 8,
                max_bits: 8,
            },
            ..Default::default()
        };
        assert!(matches!(
            signature_with(&[30, 21, 10], Some(Method::Zagier), &capped),
            Err(Error::AmbiguousRounding { .. })
        ));
    }

    fn odd_length_exponents() -> impl Strategy<Value = Vec<u64>> {
        (0usize..3).prop_flat_map(|half| prop::collection::vec(2u64..9, 2 * half + 1))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn all_methods_match_the_oracle(exps in odd_length_exponents()) {
            let expect = BigInt::from(oracle(&exps));
            prop_assert_eq!(signature_lattice(&exps).unwrap(), expect.clone());
            prop_assert_eq!(signature_dp(&exps).unwrap(), expect.clone());
            prop_assert_eq!(signature_zagier(&exps, None).unwrap(), expect);
        }

        #[test]
        fn permutation_invariance(mut exps in odd_length_exponents(), rot in 0usize..5) {
            let before = signature_dp(&exps).unwrap();
            let len = exps.len();
            exps.rotate_left(rot % len);
            prop_assert_eq!(signature_lattice(&exps).unwrap(), before.clone());
            prop_assert_eq!(signature_dp(&exps).unwrap(), before.clone());
            prop_assert_eq!(signature_zagier(&exps, None).unwrap(), before);
        }

        #[test]
        fn quadratic_suffix_flips_sign(exps in odd_length_exponents()) {
            let mut longer = exps.clone();
            longer.extend([2, 2]);
            prop_assert_eq!(signature_dp(&longer).unwrap(), -signature_dp(&exps).unwrap());
        }

        #[test]
        fn modulus_choice_is_irrelevant(exps in odd_length_exponents(), mult in 2u64..4) {
            let link = link_from_unsigned(&exps).unwrap();
            let base = signature_zagier(&exps, None).unwrap();
            prop_assert_eq!(signature_zagier(&exps, Some(link.degree() * mult)).unwrap(), base);
        }
    }
}
