//! Certified real intervals with dyadic endpoints.
//!
//! A [`CertifiedReal`] at precision `p` is the closed interval
//! `[lo / 2^p, hi / 2^p]` with integer `lo <= hi`. Every operation rounds the
//! lower endpoint toward negative infinity and the upper endpoint toward
//! positive infinity, so the exact result of the corresponding real operation
//! always lies inside the returned interval.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    lo: BigInt,
    hi: BigInt,
    precision: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `floor(x / 2^s)`.
pub(crate) fn floor_shr(x: &BigInt, s: u32) -> BigInt {
    if x.is_negative() {
        let mag: BigInt = -x;
        let shifted: BigInt = (mag + pow2(s) - 1u32) >> s;
        -shifted
    } else {
        x >> s
    }
}

/// `ceil(x / 2^s)`.
pub(crate) fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    -floor_shr(&-x, s)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl CertifiedReal {
    /// Interval from scaled endpoints `[lo / 2^precision, hi / 2^precision]`.
    pub fn from_scaled(lo: BigInt, hi: BigInt, precision: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        CertifiedReal { lo, hi, precision }
    }

    pub fn from_integer(n: impl Into<BigInt>, precision: u32) -> Self {
        let v = n.into() << precision;
        CertifiedReal {
            lo: v.clone(),
            hi: v,
            precision,
        }
    }

    /// Tightest enclosure of `q` at the given precision.
    pub fn from_rational(q: &Rational, precision: u32) -> Self {
        Self::from_rational_bounds(q, q, precision)
    }

    /// Enclosure of the real interval `[lower, upper]`.
    pub fn from_rational_bounds(lower: &Rational, upper: &Rational, precision: u32) -> Self {
        assert!(lower <= upper, "interval endpoints out of order");
        let scale = pow2(precision);
        let lo = (lower.numerator() * &scale).div_floor(lower.denominator());
        let hi = ceil_div(&(upper.numerator() * &scale), upper.denominator());
        CertifiedReal { lo, hi, precision }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn lower(&self) -> Rational {
        Rational::new(self.lo.clone(), pow2(self.precision))
    }

    pub fn upper(&self) -> Rational {
        Rational::new(self.hi.clone(), pow2(self.precision))
    }

    pub fn width(&self) -> Rational {
        Rational::new(&self.hi - &self.lo, pow2(self.precision))
    }

    pub fn contains(&self, q: &Rational) -> bool {
        let scaled = q.numerator() * pow2(self.precision);
        let den = q.denominator();
        &self.lo * den <= scaled && scaled <= &self.hi * den
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Re-expresses the interval at another precision, widening outward when
    /// precision is lost.
    pub fn with_precision(&self, precision: u32) -> Self {
        match precision.cmp(&self.precision) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = precision - self.precision;
                CertifiedReal {
                    lo: &self.lo << s,
                    hi: &self.hi << s,
                    precision,
                }
            }
            Ordering::Less => {
                let s = self.precision - precision;
                CertifiedReal {
                    lo: floor_shr(&self.lo, s),
                    hi: ceil_shr(&self.hi, s),
                    precision,
                }
            }
        }
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (Self, Self) {
        let p = self.precision.max(other.precision);
        (self.with_precision(p), other.with_precision(p))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.precision != other.precision {
            let (a, b) = self.aligned(other);
            return a.add(&b);
        }
        CertifiedReal {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            precision: self.precision,
        }
    }

    pub fn neg(&self) -> Self {
        CertifiedReal {
            lo: -&self.hi,
            hi: -&self.lo,
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.precision != other.precision {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let p = self.precision;
        let (min, max) = if !self.lo.is_negative() && !other.lo.is_negative() {
            (&self.lo * &other.lo, &self.hi * &other.hi)
        } else {
            let products = [
                &self.lo * &other.lo,
                &self.lo * &other.hi,
                &self.hi * &other.lo,
                &self.hi * &other.hi,
            ];
            let min = products.iter().min().unwrap().clone();
            let max = products.iter().max().unwrap().clone();
            (min, max)
        };
        CertifiedReal {
            lo: floor_shr(&min, p),
            hi: ceil_shr(&max, p),
            precision: p,
        }
    }

    /// Interval quotient; `None` when the divisor interval contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        if self.precision != other.precision {
            let (a, b) = self.aligned(other);
            return a.div(&b);
        }
        let p = self.precision;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            let scaled = a << p;
            for b in [&other.lo, &other.hi] {
                let f = scaled.div_floor(b);
                let c = ceil_div(&scaled, b);
                if lo.as_ref().is_none_or(|l| &f < l) {
                    lo = Some(f);
                }
                if hi.as_ref().is_none_or(|h| &c > h) {
                    hi = Some(c);
                }
            }
        }
        Some(CertifiedReal {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
            precision: p,
        })
    }

    pub fn mul_int(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        let (a, b) = (&self.lo * &n, &self.hi * &n);
        let (lo, hi) = if n.is_negative() { (b, a) } else { (a, b) };
        CertifiedReal {
            lo,
            hi,
            precision: self.precision,
        }
    }

    /// Division by a nonzero machine integer.
    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        let n = BigInt::from(n);
        // dividing by a negative flips the order of the endpoints
        let (first, second) = if n.is_negative() {
            (&self.hi, &self.lo)
        } else {
            (&self.lo, &self.hi)
        };
        CertifiedReal {
            lo: first.div_floor(&n),
            hi: ceil_div(second, &n),
            precision: self.precision,
        }
    }

    /// Widens both endpoints by `ulps` units of the last place.
    fn widen(&self, ulps: &BigInt) -> Self {
        CertifiedReal {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
            precision: self.precision,
        }
    }

    pub(crate) fn scaled_hi(&self) -> &BigInt {
        &self.hi
    }
}

/// The unique integer certified by `x`.
///
/// Succeeds when the whole interval lies within 1/4 of a single integer.
/// Fails with `AmbiguousRounding` otherwise, which tells the caller to retry
/// at a higher precision.
pub fn round_to_integer(x: &CertifiedReal) -> Result<BigInt> {
    let p = x.precision;
    let scale = pow2(p);
    // nearest integer to the midpoint: floor((lo + hi + 2^p) / 2^(p+1))
    let m = floor_shr(&(&x.lo + &x.hi + &scale), p + 1);
    let four_m = &m * 4;
    let lo_ok = &x.lo * 4 >= (&four_m - 1) * &scale;
    let hi_ok = &x.hi * 4 <= (&four_m + 1) * &scale;
    if lo_ok && hi_ok {
        Ok(m)
    } else {
        Err(Error::AmbiguousRounding {
            lower: decimal_approx(&x.lower()),
            upper: decimal_approx(&x.upper()),
        })
    }
}

fn decimal_approx(q: &Rational) -> String {
    // six fractional digits are plenty for a diagnostic
    let scaled = (q.numerator() * BigInt::from(1_000_000)).div_floor(q.denominator());
    let (int, frac) = scaled.div_mod_floor(&BigInt::from(1_000_000));
    format!("{int}.{frac:06}")
}

/// Sum of `sum_{k>=0} (-1)^k / ((2k+1) x^(2k+1))` scaled by `2^w`, with an
/// error bound in ulps.
fn atan_inv_scaled(x: u32, w: u32) -> (BigInt, BigInt) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    // power_k = floor(2^w / x^(2k+1)); nested floors of positive integers are exact floors
    let mut power = pow2(w) / &x;
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        terms += 1;
        k += 1;
        power /= &x2;
    }
    // each term is below its exact value by less than one ulp; tail below one ulp
    (sum, BigInt::from(terms + 1))
}

/// Enclosure of pi via Machin's formula.
pub fn pi(precision: u32) -> CertifiedReal {
    let guard = 32;
    let w = precision + guard;
    let (a5, e5) = atan_inv_scaled(5, w);
    let (a239, e239) = atan_inv_scaled(239, w);
    let centre = a5 * 16 - a239 * 4;
    let err = e5 * 16 + e239 * 4;
    CertifiedReal {
        lo: floor_shr(&(&centre - &err), guard),
        hi: ceil_shr(&(&centre + &err), guard),
        precision,
    }
}

/// Evaluates cotangents of rational multiples of pi at a fixed precision.
#[derive(Clone, Debug)]
pub struct TrigContext {
    precision: u32,
    pi: CertifiedReal,
}

impl TrigContext {
    pub fn new(precision: u32) -> Self {
        TrigContext {
            precision,
            pi: pi(precision),
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn pi(&self) -> &CertifiedReal {
        &self.pi
    }

    /// Enclosure of `cot(pi * num / den)`.
    ///
    /// Returns `None` at a pole (`num/den` an integer) or when the precision
    /// is too low to separate `sin` from zero.
    pub fn cot_pi(&self, num: i64, den: u64) -> Option<CertifiedReal> {
        assert!(den > 0, "denominator must be positive");
        let d = den as i128;
        let mut r = (num as i128).rem_euclid(d);
        if r == 0 {
            return None;
        }
        let mut negate = false;
        if 2 * r > d {
            // cot(pi - x) = -cot(x)
            r = d - r;
            negate = true;
        }
        let p = self.precision;
        let value = if 2 * r == d {
            CertifiedReal::from_integer(0, p)
        } else if 4 * r == d {
            CertifiedReal::from_integer(1, p)
        } else if 4 * r > d {
            // cot(x) = 1 / cot(pi/2 - x) with pi/2 - x = pi (d - 2r) / 2d
            let c = self.cot_small(d - 2 * r, 2 * d)?;
            CertifiedReal::from_integer(1, p).div(&c)?
        } else {
            self.cot_small(r, d)?
        };
        Some(if negate { value.neg() } else { value })
    }

    /// `cot(pi * num / den)` for `0 < num/den < 1/4`.
    fn cot_small(&self, num: i128, den: i128) -> Option<CertifiedReal> {
        let x = self
            .pi
            .mul_int(i64::try_from(num).ok()?)
            .div_int(i64::try_from(den).ok()?);
        let (sin, cos) = sin_cos_small(&x);
        cos.div(&sin)
    }
}

/// Taylor enclosures of `sin x` and `cos x` for `0 < x <= pi/4`.
///
/// Both series alternate with decreasing terms on this range, so the
/// truncation error is bounded by the last term kept.
fn sin_cos_small(x: &CertifiedReal) -> (CertifiedReal, CertifiedReal) {
    let p = x.precision;
    let x2 = x.mul(x);
    let one_ulp = BigInt::one();

    let mut term = x.clone();
    let mut sin = x.clone();
    let mut k: i64 = 1;
    loop {
        term = term.mul(&x2).div_int((2 * k) * (2 * k + 1));
        sin = if k % 2 == 1 {
            sin.sub(&term)
        } else {
            sin.add(&term)
        };
        if term.scaled_hi() <= &one_ulp {
            break;
        }
        k += 1;
    }
    let sin = sin.widen(&term.scaled_hi().abs());

    let mut term = CertifiedReal::from_integer(1, p);
    let mut cos = term.clone();
    let mut k: i64 = 1;
    loop {
        term = term.mul(&x2).div_int((2 * k - 1) * (2 * k));
        cos = if k % 2 == 1 {
            cos.sub(&term)
        } else {
            cos.add(&term)
        };
        if term.scaled_hi() <= &one_ulp {
            break;
        }
        k += 1;
    }
    let cos = cos.widen(&term.scaled_hi().abs());
    (sin, cos)
}
