//! bP orders, diffeomorphism counts and offsets, and classification records
//! for the link families.
//!
//! Offsets are always relative: a record reports `(t(a) - t(base)) / 8` modulo
//! `|bP_4n|`, where `base` is the family member the offset is measured from.

mod bp;
mod table;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link_model::{build_family, BrieskornLink, FamilyKind, FamilySpec};
use crate::monodromy::{link_homology, FgAbelianGroup};
use crate::signature::signature;

pub use bp::{bp_order, bp_order_4m_plus_2, bp_order_from, BpOrder, KervaireStatus};
pub use table::{diffeo_count, table_emit, table_n, TableRow};

/// `((t(a) - t(b)) / 8) mod |bP_4n|` for two highly connected links of
/// dimension `4n - 1` with isomorphic free middle homology.
pub fn diffeo_offset(link_a: &BrieskornLink, link_b: &BrieskornLink, n: u32) -> Result<BigInt> {
    let dim = 4 * n as i64 - 1;
    for link in [link_a, link_b] {
        if n < 2 || link.link_dimension() != dim {
            return Err(Error::IncomparableLinks(format!(
                "link {link} has dimension {}, expected {dim}",
                link.link_dimension()
            )));
        }
    }
    let ha = link_homology(link_a.exponents())?;
    let hb = link_homology(link_b.exponents())?;
    if !ha.is_free() || !hb.is_free() {
        return Err(Error::IncomparableLinks(format!(
            "middle homology has torsion ({ha} and {hb})"
        )));
    }
    if ha.rank != hb.rank {
        return Err(Error::IncomparableLinks(format!(
            "middle homology ranks differ ({ha} and {hb})"
        )));
    }
    let order = bp_order(n)?.order;
    signature_offset(link_a.exponents(), link_b.exponents(), &order)
}

fn signature_offset(a: &[u64], b: &[u64], order: &BigInt) -> Result<BigInt> {
    let diff = signature(a)? - signature(b)?;
    let (q, r) = diff.div_rem(&BigInt::from(8));
    if !r.is_zero() {
        return Err(Error::NotDivisibleBy8 {
            difference: diff.to_string(),
        });
    }
    Ok(q.mod_floor(order))
}

/// Summary of one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub family: FamilySpec,
    pub exponents: Vec<u64>,
    pub link_dimension: i64,
    pub homology: FgAbelianGroup,
    /// Fibre signature; only defined for an odd number of variables.
    #[serde(with = "crate::cli::opt_bigint_string")]
    pub signature: Option<BigInt>,
    /// `|bP_4n|` in dimension `4n - 1`.
    #[serde(with = "crate::cli::opt_bigint_string")]
    pub bp_order: Option<BigInt>,
    /// `bP_{4n+2}` in dimension `4n + 1`.
    pub kervaire: Option<KervaireStatus>,
    /// Member the offset is measured from.
    pub base: Option<FamilySpec>,
    #[serde(with = "crate::cli::opt_bigint_string")]
    pub offset: Option<BigInt>,
    /// Linking class for the `(k, 3, 2, ..., 2)` family.
    pub class: Option<String>,
    pub label: String,
}

/// Superscript digits for labels.
fn sup(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

fn product_label(r: u64, p: u64, q: u64) -> String {
    let body = format!("(S{}×S{})", sup(p), sup(q));
    if r == 1 {
        body
    } else {
        format!("{r}#{body}")
    }
}

/// Builds the record for a family member.
pub fn classification_record(spec: &FamilySpec) -> Result<ClassificationRecord> {
    let link = build_family(spec)?;
    let homology = link_homology(link.exponents())?;
    let n = spec.n as u64;
    let mut record = ClassificationRecord {
        family: *spec,
        exponents: link.exponents().to_vec(),
        link_dimension: link.link_dimension(),
        homology,
        signature: None,
        bp_order: None,
        kervaire: None,
        base: None,
        offset: None,
        class: None,
        label: String::new(),
    };
    match spec.kind {
        FamilyKind::SphereProduct => {
            let order = bp_order(spec.n)?.order;
            let base = spec.with_i(1);
            let offset = signature_offset(link.exponents(), &base.exponents()?, &order)?;
            record.label = format!(
                "{} # {}·Σ{} rel. base",
                product_label(record.homology.rank, 2 * n - 1, 2 * n),
                offset,
                sup(4 * n - 1)
            );
            record.signature = Some(signature(link.exponents())?);
            record.bp_order = Some(order);
            record.base = Some(base);
            record.offset = Some(offset);
        }
        FamilyKind::TheoremC => {
            let order = bp_order(spec.n)?.order;
            let (base_k, class) = theorem_c_class(spec.k, &record.homology);
            let base = spec.with_k(base_k);
            let offset = signature_offset(link.exponents(), &base.exponents()?, &order)?;
            record.label = format!(
                "{class}, K_{base_k} # {offset}·Σ{} rel. base",
                sup(4 * n - 1)
            );
            record.signature = Some(signature(link.exponents())?);
            record.bp_order = Some(order);
            record.base = Some(base);
            record.offset = Some(offset);
            record.class = Some(class);
        }
        FamilyKind::FreeOdd | FamilyKind::FreeEven | FamilyKind::UnitTangent => {
            record.kervaire = Some(bp_order_4m_plus_2(spec.n)?);
            record.label = free_label(spec, record.homology.rank);
        }
    }
    Ok(record)
}

/// Class tag and base member for `(k, 3, 2, ..., 2)`, by `k mod 6`.
fn theorem_c_class(k: u32, homology: &FgAbelianGroup) -> (u32, String) {
    let residue = k % 6;
    // smallest member >= 2 with the same residue
    let base = match residue {
        0 => 6,
        1 => 7,
        r => r,
    };
    let class = match residue {
        2 => "class K2".to_string(),
        4 => "class K4".to_string(),
        1 | 5 => "homotopy sphere".to_string(),
        0 => format!("free {homology}"),
        _ => format!("torsion {homology}"),
    };
    (base, class)
}

fn free_label(spec: &FamilySpec, rank: u64) -> String {
    let n = spec.n as u64;
    let (p, q, kerv) = (2 * n, 2 * n + 1, sup(4 * n + 1));
    let sxs = product_label(1, p, q);
    if spec.kind == FamilyKind::UnitTangent {
        // eight-fold periodicity in the exponent 2k
        return match spec.k % 4 {
            1 | 3 => "T".to_string(),
            2 => format!("{sxs}#Σ{kerv}"),
            _ => sxs,
        };
    }
    if n == 1 || n == 3 {
        return format!("#{rank}{sxs}");
    }
    let prev = if rank == 1 {
        "T".to_string()
    } else {
        format!("#{}{sxs}#T", rank - 1)
    };
    format!("one of #{rank}{sxs}, {prev}, #{rank}{sxs}#Σ{kerv}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link_model::link_from_unsigned;

    fn link(e: &[u64]) -> BrieskornLink {
        link_from_unsigned(e).unwrap()
    }

    #[test]
    fn offset_examples() {
        let a = link(&[12, 3, 2, 2, 2]);
        let b = link(&[6, 3, 2, 2, 2]);
        assert_eq!(diffeo_offset(&a, &b, 2).unwrap(), BigInt::from(1));
        assert_eq!(diffeo_offset(&b, &b, 2).unwrap(), BigInt::zero());
        assert_eq!(diffeo_offset(&b, &a, 2).unwrap(), BigInt::from(27));
        let c = link(&[18, 3, 2, 2, 2]);
        assert_eq!(diffeo_offset(&c, &b, 2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn incomparable_links() {
        let b = link(&[6, 3, 2, 2, 2]);
        let torsion = link(&[2, 3, 2, 2, 2]);
        let rank4 = link(&[10, 5, 2, 2, 2]);
        let wrong_dim = link(&[6, 3, 2, 2, 2, 2, 2]);
        for other in [&torsion, &rank4, &wrong_dim] {
            assert!(matches!(
                diffeo_offset(other, &b, 2),
                Err(Error::IncomparableLinks(_))
            ));
        }
    }

    #[test]
    fn sphere_product_record() {
        let r = classification_record(&FamilySpec::sphere_product(2, 1, 2)).unwrap();
        assert_eq!(r.homology, FgAbelianGroup::free(2));
        assert_eq!(r.offset, Some(BigInt::from(1)));
        assert_eq!(r.bp_order, Some(BigInt::from(28)));
        assert_eq!(r.label, "2#(S³×S⁴) # 1·Σ⁷ rel. base");
        let base = classification_record(&FamilySpec::sphere_product(2, 1, 1)).unwrap();
        assert_eq!(base.offset, Some(BigInt::zero()));
    }

    #[test]
    fn k_three_two_records() {
        let spec = FamilySpec::new(FamilyKind::TheoremC, 2, 8);
        let r = classification_record(&spec).unwrap();
        assert_eq!(r.class.as_deref(), Some("class K2"));
        assert_eq!(r.offset, Some(BigInt::from(1)));
        assert_eq!(r.base.unwrap().k, 2);
        let r = classification_record(&spec.with_k(10)).unwrap();
        assert_eq!(r.class.as_deref(), Some("class K4"));
        assert_eq!(r.offset, Some(BigInt::from(1)));
        // the offset direction flips with two more quadratic terms
        let r = classification_record(&FamilySpec::new(FamilyKind::TheoremC, 3, 8)).unwrap();
        assert_eq!(r.offset, Some(BigInt::from(991)));
        let r = classification_record(&spec.with_k(11)).unwrap();
        assert_eq!(r.class.as_deref(), Some("homotopy sphere"));
        assert!(r.homology.is_trivial());
        let r = classification_record(&spec.with_k(12)).unwrap();
        assert_eq!(r.homology, FgAbelianGroup::free(2));
    }

    #[test]
    fn free_records() {
        let r = classification_record(&FamilySpec::new(FamilyKind::FreeEven, 2, 1)).unwrap();
        assert_eq!(r.homology, FgAbelianGroup::free(1));
        assert!(r.label.contains('T'));
        assert_eq!(r.kervaire, Some(KervaireStatus::Z2));
        let r = classification_record(&FamilySpec::new(FamilyKind::FreeOdd, 1, 2)).unwrap();
        assert_eq!(r.homology, FgAbelianGroup::free(4));
        assert_eq!(r.label, "#4(S²×S³)");
        let labels: Vec<String> = (1..=4)
            .map(|k| {
                classification_record(&FamilySpec::new(FamilyKind::UnitTangent, 2, k))
                    .unwrap()
                    .label
            })
            .collect();
        assert_eq!(labels, ["T", "(S⁴×S⁵)#Σ⁹", "T", "(S⁴×S⁵)"]);
    }
}
