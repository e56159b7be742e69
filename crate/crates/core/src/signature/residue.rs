//! Distribution of `S = sum x_i (N / a_i)` modulo `2N` over the lattice box
//! `0 < x_i < a_i`, built one variable at a time.
//!
//! `S / N` is the fractional sum `sum x_i / a_i`, so `S mod 2N` determines the
//! sum modulo 2 exactly and no rational arithmetic is needed.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct ResidueDistribution {
    modulus: u64,
    counts: Vec<u128>,
}

impl ResidueDistribution {
    /// Points with fractional sum in `(0,1)` minus those in `(1,2)`, mod 2.
    pub(crate) fn signed_difference(&self) -> i128 {
        let n = self.modulus as usize;
        let pos: u128 = self.counts[1..n].iter().sum();
        let neg: u128 = self.counts[n + 1..].iter().sum();
        pos as i128 - neg as i128
    }

    /// Points whose fractional sum is an integer.
    pub(crate) fn integral_points(&self) -> u128 {
        let n = self.modulus as usize;
        self.counts[0] + self.counts[n]
    }
}

/// Builds the distribution for `exponents` with `N = lcm`.
///
/// `cell_budget` bounds `2N * variables`.
pub(crate) fn residue_distribution(
    exponents: &[u64],
    degree: u64,
    milnor_number: u128,
    cell_budget: u64,
) -> Result<ResidueDistribution> {
    let cells = (2 * degree as u128) * exponents.len() as u128;
    if cells > cell_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "residue convolution cells",
            required: cells,
            budget: cell_budget as u128,
        });
    }
    // Window sums never exceed the total mass, which is the Milnor number.
    if milnor_number >= 1u128 << 126 {
        return Err(Error::BudgetExceeded {
            what: "lattice point count",
            required: milnor_number,
            budget: 1u128 << 126,
        });
    }
    let len = 2 * degree as usize;
    let mut counts = vec![0u128; len];
    counts[0] = 1;
    let mut next = vec![0u128; len];
    for &a in exponents {
        convolve_step(&counts, &mut next, a as usize, (degree / a) as usize);
        std::mem::swap(&mut counts, &mut next);
    }
    Ok(ResidueDistribution {
        modulus: degree,
        counts,
    })
}

/// `out[r] = sum_{x=1}^{a-1} f[r - x*step]` with indices mod `len = 2 a step`.
///
/// Residues split into `step` classes `c + m*step`; within a class this is a
/// cyclic sliding window of width `a - 1` over `2a` entries.
fn convolve_step(f: &[u128], out: &mut [u128], a: usize, step: usize) {
    let period = 2 * a;
    debug_assert_eq!(f.len(), period * step);
    let width = a - 1;
    for c in 0..step {
        let at = |m: usize| f[c + (m % period) * step];
        // window for m = 0 covers m' = -1, ..., -(a-1)
        let mut window: u128 = (1..=width).map(|x| at(period - x)).sum();
        for m in 0..period {
            out[c + m * step] = window;
            // slide: add m, drop m - (a - 1)
            window = window + at(m) - at(m + period - width);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link_model::link_from_unsigned;

    fn naive(exponents: &[u64]) -> Vec<u128> {
        let link = link_from_unsigned(exponents).unwrap();
        let n = link.degree();
        let m = 2 * n;
        let mut counts = vec![0u128; m as usize];
        counts[0] = 1;
        for &a in exponents {
            let step = n / a;
            let mut next = vec![0u128; m as usize];
            for (r, &c) in counts.iter().enumerate() {
                for x in 1..a {
                    next[((r as u64 + x * step) % m) as usize] += c;
                }
            }
            counts = next;
        }
        counts
    }

    #[test]
    fn sliding_window_matches_naive_convolution() {
        for exps in [
            vec![2u64, 2, 2],
            vec![6, 3, 2, 2, 2],
            vec![7, 4, 3],
            vec![12, 8, 5, 2],
            vec![9],
            vec![4, 4, 2, 2, 2, 2, 2],
        ] {
            let link = link_from_unsigned(&exps).unwrap();
            let d =
                residue_distribution(&exps, link.degree(), link.milnor_number(), u64::MAX).unwrap();
            let expect = naive(&exps);
            assert_eq!(d.counts, expect, "{exps:?}");
            assert_eq!(d.counts.iter().sum::<u128>(), link.milnor_number());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let link = link_from_unsigned(&[6, 3, 2]).unwrap();
        let r = residue_distribution(&[6, 3, 2], link.degree(), link.milnor_number(), 10);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
