//! Quantum arithmetic over the series ring: half-integers, deformed
//! exponentials `e^{a h}`, quantum numbers `[a]`, factorials and binomials.
//!
//! Half-integers are stored as their doubled value, so spins, weights and
//! binomial labels stay exact integers. The quantum number of `a` is
//!
//! ```text
//! [a] = (e^{a h} - e^{-a h}) / (e^{h} - e^{-h})
//! ```
//!
//! a series with constant term `a`. The deformed binomial carries the
//! prefactor `e^{h k (k - n)}`, which keeps its constant term equal to the
//! ordinary binomial coefficient and makes it symmetric under
//! `k <-> n - k`.

use crate::error::{Error, Result};
use crate::scalar::{HSeries, Rational};
use num::{BigInt, One};
use std::fmt;
use std::str::FromStr;

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value; panics on a proper half-integer.
    pub fn as_int(self) -> i64 {
        assert!(self.is_integer(), "{self} is not an integer");
        self.twice / 2
    }

    pub fn as_rational(self) -> Rational {
        Rational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self.twice <= other.twice {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self.twice >= other.twice {
            self
        } else {
            other
        }
    }

    /// Inclusive range `lo, lo+1, ..., hi` in unit steps.
    pub fn range_inclusive(lo: Self, hi: Self) -> impl Iterator<Item = HalfInt> {
        (lo.twice..=hi.twice).step_by(2).map(HalfInt::from_twice)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl std::ops::Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt {
            twice: self.twice + 2 * rhs,
        }
    }
}

impl std::ops::Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt {
            twice: self.twice - 2 * rhs,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::DomainError(format!("invalid half-integer `{s}`"));
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(err());
            }
            let n: i64 = num.trim().parse().map_err(|_| err())?;
            Ok(HalfInt::from_twice(n))
        } else {
            let n: i64 = s.trim().parse().map_err(|_| err())?;
            Ok(HalfInt::from_int(n))
        }
    }
}

/// `e^{a h}` for a rational exponent multiplier `a`.
pub fn hexp_rational(a: &Rational, order: usize) -> HSeries {
    let mut coeffs = Vec::with_capacity(order);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for k in 1..order {
        c = c * a.clone() / Rational::from_integer(BigInt::from(k as i64));
        coeffs.push(c.clone());
    }
    HSeries::from_rational_coeffs(coeffs, order)
}

/// `e^{a h}` for a half-integer `a`.
pub fn hexp(a: HalfInt, order: usize) -> HSeries {
    hexp_rational(&a.as_rational(), order)
}

/// `e^{k h}` for an integer `k`.
pub fn hexp_int(k: i64, order: usize) -> HSeries {
    hexp(HalfInt::from_int(k), order)
}

/// `2 sinh(a h) / h` — the quantum-number numerator divided by `h`,
/// computed at the given order.
fn sinh2_over_h(a: &Rational, order: usize) -> HSeries {
    // (e^{ah} - e^{-ah})/h = 2 sum_{k even} a^{k+1} h^k / (k+1)!
    let up = hexp_rational(a, order + 1);
    let down = hexp_rational(&-a.clone(), order + 1);
    (&up - &down).shift_down()
}

/// The quantum number `[a] = (e^{a h} - e^{-a h})/(e^{h} - e^{-h})` of a
/// half-integer `a`. Its constant term is `a`.
pub fn qnum(a: HalfInt, order: usize) -> HSeries {
    let num = sinh2_over_h(&a.as_rational(), order);
    let den = sinh2_over_h(&Rational::one(), order);
    &num * &den.inv().expect("2 + O(h^2) is invertible")
}

/// `[k]` for an integer `k`.
pub fn qnum_int(k: i64, order: usize) -> HSeries {
    qnum(HalfInt::from_int(k), order)
}

/// The quantum factorial `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn qfact(n: i64, order: usize) -> Result<HSeries> {
    if n < 0 {
        return Err(Error::DomainError(format!(
            "negative factorial argument {n}"
        )));
    }
    let mut acc = HSeries::one(order);
    for k in 1..=n {
        acc = &acc * &qnum_int(k, order);
    }
    Ok(acc)
}

/// The deformed binomial coefficient
/// `qbinom(n, k) = e^{h k (k-n)} [n]! / ([n-k]! [k]!)`.
///
/// Its constant term is the ordinary binomial coefficient and it is
/// symmetric under `k <-> n-k`.
pub fn qbinom(n: i64, k: i64, order: usize) -> Result<HSeries> {
    if k < 0 || k > n {
        return Err(Error::DomainError(format!(
            "binomial index ({n}, {k}) out of range"
        )));
    }
    let num = qfact(n, order)?;
    let den = &qfact(n - k, order)? * &qfact(k, order)?;
    let pre = hexp_int(k * (k - n), order);
    Ok(&(&pre * &num) * &den.inv().expect("[m]! has nonzero integer leading term"))
}

/// The ordinary binomial coefficient as an exact rational.
pub fn binom_rational(n: i64, k: i64) -> Result<Rational> {
    if k < 0 || k > n {
        return Err(Error::DomainError(format!(
            "binomial index ({n}, {k}) out of range"
        )));
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer(BigInt::from(n - i))
            / Rational::from_integer(BigInt::from(i + 1));
    }
    Ok(acc)
}
