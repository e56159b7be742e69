//! Brieskorn-Pham exponent vectors, their weighted-homogeneous data, and the
//! link families used for the classification tables.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The link of `z_0^a_0 + ... + z_n^a_n` at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrieskornLink {
    exponents: Vec<u64>,
    weights: Vec<u64>,
    degree: u64,
    milnor_number: u128,
}

impl BrieskornLink {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn variable_count(&self) -> usize {
        self.exponents.len()
    }

    /// Real dimension of the link, `2(n+1) - 3`; `-1` (empty link) for a
    /// single variable.
    pub fn link_dimension(&self) -> i64 {
        2 * self.exponents.len() as i64 - 3
    }

    /// Canonical weights `w_i = d / a_i`.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `d = lcm(a_0, ..., a_n)`.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn milnor_number(&self) -> u128 {
        self.milnor_number
    }

    pub fn is_ricci_positive(&self) -> bool {
        is_ricci_positive(&self.weights, self.degree)
    }
}

impl fmt::Display for BrieskornLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Validates exponents and derives weights, degree and Milnor number.
pub fn make_link(exponents: &[i64]) -> Result<BrieskornLink> {
    if exponents.is_empty() {
        return Err(Error::EmptyExponents);
    }
    let mut checked = Vec::with_capacity(exponents.len());
    for (index, &value) in exponents.iter().enumerate() {
        if value < 2 {
            return Err(Error::InvalidExponent { index, value });
        }
        checked.push(value as u64);
    }
    let degree = checked
        .iter()
        .try_fold(1u64, |acc, &a| (acc / acc.gcd(&a)).checked_mul(a))
        .ok_or_else(|| Error::InvalidArgument("degree lcm(a_i) overflows 64 bits".into()))?;
    let weights = checked.iter().map(|&a| degree / a).collect();
    let milnor_number = milnor_product(&checked)
        .ok_or_else(|| Error::InvalidArgument("Milnor number overflows 128 bits".into()))?;
    Ok(BrieskornLink {
        exponents: checked,
        weights,
        degree,
        milnor_number,
    })
}

/// `make_link` for exponents already known to be positive.
pub fn link_from_unsigned(exponents: &[u64]) -> Result<BrieskornLink> {
    let signed: Vec<i64> = exponents
        .iter()
        .map(|&a| {
            i64::try_from(a).map_err(|_| Error::InvalidArgument(format!("exponent {a} too large")))
        })
        .collect::<Result<_>>()?;
    make_link(&signed)
}

fn milnor_product(exponents: &[u64]) -> Option<u128> {
    exponents
        .iter()
        .try_fold(1u128, |acc, &a| acc.checked_mul(a as u128 - 1))
}

/// Milnor number `prod (a_i - 1)`.
pub fn milnor_number(link: &BrieskornLink) -> u128 {
    link.milnor_number
}

/// The positivity criterion `|w| - d > 0`.
pub fn is_ricci_positive(weights: &[u64], degree: u64) -> bool {
    let total: u128 = weights.iter().map(|&w| w as u128).sum();
    total > degree as u128
}

/// Adds `z_0^2 + z_1^2` to a weighted-homogeneous polynomial with weights
/// `w'` and degree `d'`, returning the weights and degree of the sum.
pub fn stabilize(weights_prime: &[u64], degree_prime: u64) -> (Vec<u64>, u64) {
    assert!(degree_prime >= 1, "degree must be positive");
    if degree_prime % 2 == 1 {
        let mut w = vec![degree_prime, degree_prime];
        w.extend(weights_prime.iter().map(|&x| 2 * x));
        (w, 2 * degree_prime)
    } else {
        let half = degree_prime / 2;
        let mut w = vec![half, half];
        w.extend_from_slice(weights_prime);
        (w, degree_prime)
    }
}

/// The closed set of link families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `(2i(2k+1), 2k+1, 2, ..., 2)` on `2n+1` variables; homeomorphic to
    /// `2k#(S^{2n-1} x S^{2n})`.
    SphereProduct,
    /// `(2(2k+1), 2k+1, 2, ..., 2)` on `2n+2` variables.
    FreeOdd,
    /// `(2k, 2k, 2, ..., 2)` on `2n+2` variables.
    FreeEven,
    /// `(2k, 2, ..., 2)` on `2n+2` variables.
    UnitTangent,
    /// `(k, 3, 2, ..., 2)` on `2n+1` variables.
    TheoremC,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::SphereProduct,
        FamilyKind::FreeOdd,
        FamilyKind::FreeEven,
        FamilyKind::UnitTangent,
        FamilyKind::TheoremC,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyKind::SphereProduct => "sphere-product",
            FamilyKind::FreeOdd => "free-odd",
            FamilyKind::FreeEven => "free-even",
            FamilyKind::UnitTangent => "unit-tangent",
            FamilyKind::TheoremC => "theorem-c",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.cli_name() == name)
    }

    /// Whether the link dimension is `4n - 1` (as opposed to `4n + 1`).
    pub fn is_dimension_4n_minus_1(self) -> bool {
        matches!(self, FamilyKind::SphereProduct | FamilyKind::TheoremC)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: u32,
    pub k: u32,
    /// Iterate index, used only by [`FamilyKind::SphereProduct`].
    pub i: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: u32, k: u32) -> Self {
        FamilySpec { kind, n, k, i: 1 }
    }

    pub fn sphere_product(n: u32, k: u32, i: u32) -> Self {
        FamilySpec {
            kind: FamilyKind::SphereProduct,
            n,
            k,
            i,
        }
    }

    /// Same family and parameters with a different iterate / fold index.
    pub fn with_i(self, i: u32) -> Self {
        FamilySpec { i, ..self }
    }

    pub fn with_k(self, k: u32) -> Self {
        FamilySpec { k, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        // k = 0 is left to exponent validation, which rejects the resulting 0 or 1
        if self.n == 0 || self.i == 0 {
            return Err(Error::InvalidFamily(format!(
                "n and i must be positive (n={}, i={})",
                self.n, self.i
            )));
        }
        if self.kind.is_dimension_4n_minus_1() && self.n < 2 {
            // a single quadratic term cannot make these links positive
            return Err(Error::InvalidFamily(format!(
                "{} needs n >= 2, got n={}",
                self.kind, self.n
            )));
        }
        Ok(())
    }

    /// Exponent vector of the family member.
    pub fn exponents(&self) -> Result<Vec<u64>> {
        self.validate()?;
        let n = self.n as usize;
        let k = self.k as u64;
        let (head, variables): (Vec<u64>, usize) = match self.kind {
            FamilyKind::SphereProduct => {
                let q = 2 * k + 1;
                (vec![2 * self.i as u64 * q, q], 2 * n + 1)
            }
            FamilyKind::FreeOdd => {
                let q = 2 * k + 1;
                (vec![2 * q, q], 2 * n + 2)
            }
            FamilyKind::FreeEven => (vec![2 * k, 2 * k], 2 * n + 2),
            FamilyKind::UnitTangent => (vec![2 * k], 2 * n + 2),
            FamilyKind::TheoremC => (vec![k, 3], 2 * n + 1),
        };
        let mut exps = head;
        exps.resize(variables, 2);
        Ok(exps)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::SphereProduct => {
                write!(f, "{}(n={}, k={}, i={})", self.kind, self.n, self.k, self.i)
            }
            _ => write!(f, "{}(n={}, k={})", self.kind, self.n, self.k),
        }
    }
}

/// Builds the family member's link.
pub fn build_family(spec: &FamilySpec) -> Result<BrieskornLink> {
    link_from_unsigned(&spec.exponents()?)
}
