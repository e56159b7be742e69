//! Integral monodromy of Brieskorn-Pham singularities and the homology of
//! cyclic branched covers.
//!
//! The monodromy on the Milnor lattice of `z_0^a_0 + ... + z_n^a_n` is the
//! tensor product of the companion matrices of `1 + t + ... + t^(a_i - 1)`.
//! Its eigenvalues are `exp(2 pi i sum x_j / a_j)` for `0 < x_j < a_j`. The
//! `k`-fold cyclic cover of the sphere branched along the link has middle
//! homology `coker(I + h + ... + h^(k-1))`.

mod group;
mod matrix;
mod poly;
mod snf;

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::link_model::{link_from_unsigned, BrieskornLink};
use crate::signature::residue::residue_distribution;
use crate::Budgets;

pub use group::FgAbelianGroup;
pub use matrix::IntMatrix;
pub use poly::{charpoly, cyclotomic, IntPoly};
pub use snf::{smith_decomposition, smith_normal_form, SmithDecomposition};

/// Monodromy `h` on the Milnor lattice, with its period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyOperator {
    matrix: IntMatrix,
    exponents: Vec<u64>,
    period: u64,
}

impl MonodromyOperator {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Milnor number, the side of the matrix.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Least `d >= 1` with `h^d = I`.
    pub fn period(&self) -> u64 {
        self.period
    }
}

/// Monodromy of the branch link with the default matrix budget.
pub fn milnor_lattice(exponents: &[u64]) -> Result<MonodromyOperator> {
    milnor_lattice_with_budget(exponents, Budgets::default().matrix_size)
}

pub fn milnor_lattice_with_budget(exponents: &[u64], budget: u64) -> Result<MonodromyOperator> {
    let link = link_from_unsigned(exponents)?;
    check_matrix_budget(&link, budget)?;
    let matrix = link
        .exponents()
        .iter()
        .map(|&a| IntMatrix::cyclotomic_companion(a as usize))
        .reduce(|acc, c| acc.kronecker(&c))
        .expect("nonempty exponents");
    let period = verified_period(&matrix, eigenvalue_period(&link))?;
    Ok(MonodromyOperator {
        matrix,
        exponents: link.exponents().to_vec(),
        period,
    })
}

fn check_matrix_budget(link: &BrieskornLink, budget: u64) -> Result<()> {
    if link.milnor_number() > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "monodromy matrix size",
            required: link.milnor_number(),
            budget: budget as u128,
        });
    }
    Ok(())
}

/// Multiplicity of each eigenvalue order `m`: the number of lattice points
/// `x` whose `exp(2 pi i sum x_j / a_j)` is a primitive `m`-th root of unity.
pub fn eigenvalue_orders(exponents: &[u64]) -> Result<BTreeMap<u64, u64>> {
    let link = link_from_unsigned(exponents)?;
    check_matrix_budget(&link, Budgets::default().matrix_size)?;
    Ok(eigenvalue_orders_of(&link))
}

fn eigenvalue_orders_of(link: &BrieskornLink) -> BTreeMap<u64, u64> {
    let n = link.degree();
    let steps: Vec<u64> = link.exponents().iter().map(|&a| n / a).collect();
    let mut orders = BTreeMap::new();
    let mut x: Vec<u64> = vec![1; steps.len()];
    let mut s: u64 = steps.iter().fold(0, |acc, &w| (acc + w) % n);
    loop {
        *orders.entry(n / s.gcd(&n)).or_insert(0) += 1;
        // odometer over 0 < x_i < a_i, keeping s = sum x_i w_i mod N
        let mut i = 0;
        loop {
            if i == x.len() {
                return orders;
            }
            let a = link.exponents()[i];
            if x[i] + 1 < a {
                x[i] += 1;
                s = (s + steps[i]) % n;
                break;
            }
            s = (s + n - ((a - 2) * steps[i]) % n) % n;
            x[i] = 1;
            i += 1;
        }
    }
}

/// `prod_x (t - exp(2 pi i sum x_j / a_j))` assembled from cyclotomic factors.
pub fn expected_charpoly(exponents: &[u64]) -> Result<IntPoly> {
    let orders = eigenvalue_orders(exponents)?;
    let mut p = IntPoly::one();
    for (&m, &count) in &orders {
        let phi = cyclotomic(m as usize);
        let deg = phi.degree().unwrap() as u64;
        debug_assert_eq!(count % deg, 0, "eigenvalues come in Galois orbits");
        p = p.mul(&phi.pow(count / deg));
    }
    Ok(p)
}

fn eigenvalue_period(link: &BrieskornLink) -> u64 {
    eigenvalue_orders_of(link)
        .keys()
        .fold(1u64, |acc, &m| acc.lcm(&m))
}

/// Confirms `h^d = I` and that no proper divisor `d/p` works.
fn verified_period(h: &IntMatrix, candidate: u64) -> Result<u64> {
    if !h.pow(candidate).is_identity() {
        return Err(Error::NotFiniteOrder { limit: candidate });
    }
    let mut d = candidate;
    for p in prime_factors(candidate) {
        while d.is_multiple_of(p) && h.pow(d / p).is_identity() {
            d /= p;
        }
    }
    Ok(d)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `d >= 1` with `h^d = I`.
pub fn monodromy_period(op: &MonodromyOperator) -> Result<u64> {
    verified_period(&op.matrix, op.period)
}

/// `coker(I + h + ... + h^(k-1))` for the `fold`-fold branched cover.
pub fn cover_homology(branch_exponents: &[u64], fold: u64) -> Result<FgAbelianGroup> {
    cover_homology_with_budget(branch_exponents, fold, Budgets::default().matrix_size)
}

pub fn cover_homology_with_budget(
    branch_exponents: &[u64],
    fold: u64,
    budget: u64,
) -> Result<FgAbelianGroup> {
    let op = milnor_lattice_with_budget(branch_exponents, budget)?;
    cover_homology_of(&op, fold)
}

/// Cover homology from a prebuilt operator. With `h^d = I`,
/// `S_k = q S_d + S_r` for `k = q d + r`, so large folds cost no more than
/// folds below `2d`.
pub fn cover_homology_of(op: &MonodromyOperator, fold: u64) -> Result<FgAbelianGroup> {
    if fold == 0 {
        return Err(Error::InvalidArgument("fold must be at least 1".into()));
    }
    let d = op.period;
    let (q, r) = fold.div_rem(&d);
    let h = &op.matrix;
    let sum = if q == 0 {
        h.geometric_sum(r)
    } else {
        let full = h.geometric_sum(d).scale(&q.into());
        &full + &h.geometric_sum(r)
    };
    Ok(FgAbelianGroup::from_smith_diagonal(
        &smith_normal_form(&sum),
        0,
    ))
}

/// Rank of the middle homology of the link: lattice points with integral
/// fractional sum.
pub fn link_rank(exponents: &[u64]) -> Result<u128> {
    link_rank_with_budget(exponents, Budgets::default().dp_cells)
}

pub fn link_rank_with_budget(exponents: &[u64], cell_budget: u64) -> Result<u128> {
    let link = link_from_unsigned(exponents)?;
    let dist = residue_distribution(
        link.exponents(),
        link.degree(),
        link.milnor_number(),
        cell_budget,
    )?;
    Ok(dist.integral_points())
}

/// Middle homology of the link, realised as the cyclic cover of the sphere
/// branched along the link of the remaining variables. The largest exponent
/// is used as the fold so that the matrix is as small as possible.
pub fn link_homology(exponents: &[u64]) -> Result<FgAbelianGroup> {
    link_homology_with_budget(exponents, Budgets::default().matrix_size)
}

pub fn link_homology_with_budget(exponents: &[u64], budget: u64) -> Result<FgAbelianGroup> {
    let link = link_from_unsigned(exponents)?;
    if link.variable_count() < 2 {
        return Err(Error::InvalidArgument(
            "the link of a single variable is empty".into(),
        ));
    }
    let exps = link.exponents();
    let (pos, &fold) = exps
        .iter()
        .enumerate()
        .max_by_key(|&(i, a)| (a, std::cmp::Reverse(i)))
        .unwrap();
    let branch: Vec<u64> = exps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, &a)| a)
        .collect();
    cover_homology_with_budget(&branch, fold, budget)
}
