//! The exact scalar tower: radical scalars and truncated `h`-adic series.
//!
//! A [`RadicalScalar`] is a finite sum `sum_d r_d * sqrt(d)` over squarefree
//! positive integers `d` with rational coefficients `r_d`; `d = 1` is the
//! rational part. The set is closed under ring operations because
//! `sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)*(d2/g))` for `g = gcd(d1, d2)`;
//! radicands therefore never need factoring beyond the squarefree reduction
//! of constructor inputs, which uses trial division (inputs stay small).
//!
//! An [`HSeries`] is a polynomial `c_0 + c_1 h + ... + c_{N-1} h^{N-1}` in
//! the deformation parameter truncated at `order = N`. Arithmetic between
//! series of different orders truncates to the minimum order. Division and
//! square roots are restricted to series whose leading coefficient is a
//! single radical term (for [`HSeries::inv`]) or a single positive rational
//! term (for [`HSeries::sqrt`]); everything the representation-theoretic
//! layers produce satisfies this.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Decompose `n >= 1` as `n = square^2 * free` with `free` squarefree.
/// Trial division; the radicands that arise in practice are tiny.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    assert!(n >= 1, "radicand must be positive");
    let mut n = n;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += 1;
    }
    free *= n; // leftover prime
    (square, free)
}

/// A finite Q-linear combination of square roots of squarefree positive
/// integers. The map never stores zero coefficients, so structural equality
/// is semantic equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u64, Rational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut s = Self::default();
        s.insert_term(1, r);
        s
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// Convenience constructor for `num/den`.
    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `coeff * sqrt(radicand)` with the radicand reduced to squarefree form.
    pub fn radical(coeff: Rational, radicand: u64) -> Self {
        let mut s = Self::default();
        if radicand == 0 {
            return s;
        }
        let (square, free) = squarefree_decompose(radicand);
        s.insert_term(free, coeff * rat_int(square as i64));
        s
    }

    /// Exact `sqrt(n)` for an integer `n >= 0`.
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Self::radical(Rational::one(), n)
        }
    }

    /// Exact `sqrt(p/q)` for a nonnegative rational, as `sqrt(p*q)/q`.
    pub fn sqrt_rational(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NotASquareRootDomain(format!("{r}")));
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        let p: u64 = u64::try_from(r.numer().clone())
            .map_err(|_| Error::NotASquareRootDomain(format!("{r}")))?;
        let q: u64 = u64::try_from(r.denom().clone())
            .map_err(|_| Error::NotASquareRootDomain(format!("{r}")))?;
        Ok(Self::radical(
            Rational::new(BigInt::one(), BigInt::from(q)),
            p.checked_mul(q)
                .ok_or_else(|| Error::NotASquareRootDomain(format!("{r}")))?,
        ))
    }

    fn insert_term(&mut self, d: u64, r: Rational) {
        if r.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(r);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + r;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the value lies in Q (at most a `sqrt(1)` term).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    /// The coefficient of `sqrt(1)`.
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some((coeff, radicand))` when the value is a single radical term.
    pub fn as_single_term(&self) -> Option<(&Rational, u64)> {
        if self.terms.len() == 1 {
            let (&d, r) = self.terms.iter().next().unwrap();
            Some((r, d))
        } else {
            None
        }
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&d, r)| (d, r))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let mut s = Self::default();
        for (&d, c) in &self.terms {
            s.terms.insert(d, c.clone() * r);
        }
        s
    }
}

impl std::ops::Add for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut s = self.clone();
        for (&d, r) in &rhs.terms {
            s.insert_term(d, r.clone());
        }
        s
    }
}

impl std::ops::Sub for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut s = self.clone();
        for (&d, r) in &rhs.terms {
            s.insert_term(d, -r.clone());
        }
        s
    }
}

impl std::ops::Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        let mut s = RadicalScalar::default();
        for (&d, r) in &self.terms {
            s.terms.insert(d, -r.clone());
        }
        s
    }
}

impl std::ops::Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut s = RadicalScalar::default();
        for (&d1, r1) in &self.terms {
            for (&d2, r2) in &rhs.terms {
                // sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)(d2/g)) with g = gcd:
                // both quotients are coprime and squarefree, so no reduction
                // is needed.
                let g = num::integer::gcd(d1, d2);
                let d = (d1 / g) * (d2 / g);
                s.insert_term(d, r1.clone() * r2.clone() * rat_int(g as i64));
            }
        }
        s
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, r) in &self.terms {
            let neg = r.is_negative();
            let abs = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if d == 1 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{abs}*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A truncated series `sum_{k < order} c_k h^k` with radical coefficients.
///
/// `coeffs.len() == order` always holds; the zero series stores empty
/// scalars, so structural equality is semantic equality at equal order.
#[derive(Clone, PartialEq, Eq)]
pub struct HSeries {
    order: usize,
    coeffs: Vec<RadicalScalar>,
}

impl HSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        Self {
            order,
            coeffs: vec![RadicalScalar::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(RadicalScalar::one(), order)
    }

    pub fn constant(c: RadicalScalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_rational(r: Rational, order: usize) -> Self {
        Self::constant(RadicalScalar::from_rational(r), order)
    }

    pub fn from_int(n: i64, order: usize) -> Self {
        Self::from_rational(rat_int(n), order)
    }

    /// `c * h^k` (zero when `k >= order`).
    pub fn monomial(k: usize, c: RadicalScalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series with the given rational coefficients, truncated or zero-padded
    /// to `order`.
    pub fn from_rational_coeffs(cs: Vec<Rational>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in cs.into_iter().take(order).enumerate() {
            s.coeffs[k] = RadicalScalar::from_rational(c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &RadicalScalar {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RadicalScalar] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: RadicalScalar) {
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RadicalScalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == RadicalScalar::one()
            && self.coeffs[1..].iter().all(RadicalScalar::is_zero)
    }

    /// Truncate to `min(self.order, order)`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1);
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Divide by `h`. The constant coefficient must vanish; the result has
    /// one order less.
    pub fn shift_down(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "shift_down of series with constant term"
        );
        assert!(self.order >= 2);
        Self {
            order: self.order - 1,
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    pub fn scale(&self, c: &RadicalScalar) -> Self {
        let mut s = Self::zero(self.order);
        if c.is_zero() {
            return s;
        }
        for (k, a) in self.coeffs.iter().enumerate() {
            s.coeffs[k] = a * c;
        }
        s
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&RadicalScalar::from_rational(r.clone()))
    }

    /// Multiplicative inverse. Requires the leading coefficient to be a
    /// single nonzero radical term `r*sqrt(d)`; then
    /// `self = c0 (1 + u)` with `u` of positive valuation and the inverse is
    /// `c0^{-1} sum_k (-u)^k`.
    pub fn inv(&self) -> Result<Self> {
        let lead = &self.coeffs[0];
        let (r, d) = lead
            .as_single_term()
            .ok_or_else(|| Error::NotInvertible(format!("{lead}")))?;
        // (r sqrt(d))^-1 = sqrt(d)/(r d)
        let inv_lead = RadicalScalar::radical((Rational::one() / r.clone()) / rat_int(d as i64), d);
        let normalized = self.scale(&inv_lead); // 1 + u
        let mut u = normalized;
        u.coeffs[0] = RadicalScalar::zero();
        let mut result = Self::one(self.order);
        let mut term = Self::one(self.order);
        for _ in 1..self.order {
            term = &(&term * &u) * &Self::from_int(-1, self.order);
            if term.is_zero() {
                break;
            }
            result = &result + &term;
        }
        Ok(result.scale(&inv_lead))
    }

    /// Square root. Requires the leading coefficient to be a single positive
    /// rational term `p/q`; the leading coefficient of the result is the
    /// exact radical `sqrt(p*q)/q` and the tail comes from the binomial
    /// series of `(1 + u)^{1/2}`.
    pub fn sqrt(&self) -> Result<Self> {
        let lead = &self.coeffs[0];
        let (r, d) = lead
            .as_single_term()
            .ok_or_else(|| Error::NotASquareRootDomain(format!("{lead}")))?;
        if d != 1 || !r.is_positive() {
            return Err(Error::NotASquareRootDomain(format!("{lead}")));
        }
        let lead_sqrt = RadicalScalar::sqrt_rational(r)?;
        let mut u = self.scale_rational(&(Rational::one() / r.clone())); // 1 + u
        u.coeffs[0] = RadicalScalar::zero();
        // (1+u)^{1/2} = sum_k C(1/2, k) u^k
        let mut result = Self::one(self.order);
        let mut upow = Self::one(self.order);
        let mut binom = Rational::one();
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        for k in 1..self.order {
            binom = binom * (half.clone() - rat_int(k as i64 - 1)) / rat_int(k as i64);
            upow = &upow * &u;
            if upow.is_zero() {
                break;
            }
            result = &result + &upow.scale_rational(&binom);
        }
        Ok(result.scale(&lead_sqrt))
    }

    /// If the series is exactly `c * e^{k h}` at its truncation order, for
    /// a single square-root term `c` and non-zero rational `k`, returns
    /// `(c, k)`.  At least three coefficients must be stored so that the
    /// pattern is over-determined rather than a coincidence of low order.
    pub fn as_exponential(&self) -> Option<(RadicalScalar, Rational)> {
        if self.order < 3 {
            return None;
        }
        let (r0, d0) = self.coeffs[0].as_single_term()?;
        let (r1, d1) = self.coeffs[1].as_single_term()?;
        if d1 != d0 {
            return None;
        }
        let k = r1 / r0;
        let mut expected = r1.clone();
        for (i, c) in self.coeffs.iter().enumerate().skip(2) {
            expected = expected * &k / rat_int(i as i64);
            let (ri, di) = c.as_single_term()?;
            if di != d0 || *ri != expected {
                return None;
            }
        }
        Some((self.coeffs[0].clone(), k))
    }

    /// JSON value in the documented schema:
    /// `{"order": N, "coeffs": [[[num, den, radicand], ...], ...]}`.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut coeffs = Vec::with_capacity(self.order);
        for c in &self.coeffs {
            let mut terms = Vec::new();
            for (d, r) in c.iter_terms() {
                let num = i64::try_from(r.numer().clone())
                    .map_err(|_| Error::Serialize(format!("numerator out of i64 range: {r}")))?;
                let den = i64::try_from(r.denom().clone())
                    .map_err(|_| Error::Serialize(format!("denominator out of i64 range: {r}")))?;
                terms.push(serde_json::json!([num, den, d]));
            }
            coeffs.push(serde_json::Value::Array(terms));
        }
        Ok(serde_json::json!({ "order": self.order, "coeffs": coeffs }))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Serialize(m.to_string());
        let order = v
            .get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| bad("missing order"))? as usize;
        if order == 0 {
            return Err(bad("order must be positive"));
        }
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| bad("missing coeffs"))?;
        if coeffs.len() != order {
            return Err(bad("coeffs length must equal order"));
        }
        let mut s = Self::zero(order);
        for (k, terms) in coeffs.iter().enumerate() {
            let terms = terms
                .as_array()
                .ok_or_else(|| bad("coefficient must be an array"))?;
            let mut c = RadicalScalar::zero();
            for t in terms {
                let t = t
                    .as_array()
                    .ok_or_else(|| bad("term must be [num, den, radicand]"))?;
                if t.len() != 3 {
                    return Err(bad("term must be [num, den, radicand]"));
                }
                let num = t[0]
                    .as_i64()
                    .ok_or_else(|| bad("numerator must be an integer"))?;
                let den = t[1]
                    .as_i64()
                    .ok_or_else(|| bad("denominator must be an integer"))?;
                let rad = t[2]
                    .as_u64()
                    .ok_or_else(|| bad("radicand must be a positive integer"))?;
                if den == 0 || rad == 0 {
                    return Err(bad("denominator and radicand must be nonzero"));
                }
                c = &c
                    + &RadicalScalar::radical(
                        Rational::new(BigInt::from(num), BigInt::from(den)),
                        rad,
                    );
            }
            s.coeffs[k] = c;
        }
        Ok(s)
    }
}

impl std::ops::Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        let order = self.order.min(rhs.order);
        let mut s = HSeries::zero(order);
        for k in 0..order {
            s.coeffs[k] = &self.coeffs[k] + &rhs.coeffs[k];
        }
        s
    }
}

impl std::ops::Sub for &HSeries {
    type Output = HSeries;
    fn sub(self, rhs: &HSeries) -> HSeries {
        let order = self.order.min(rhs.order);
        let mut s = HSeries::zero(order);
        for k in 0..order {
            s.coeffs[k] = &self.coeffs[k] - &rhs.coeffs[k];
        }
        s
    }
}

impl std::ops::Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        let mut s = HSeries::zero(self.order);
        for k in 0..self.order {
            s.coeffs[k] = -&self.coeffs[k];
        }
        s
    }
}

impl std::ops::Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        let order = self.order.min(rhs.order);
        let mut s = HSeries::zero(order);
        for i in 0..order.min(self.order) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..(order - i).min(rhs.order) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                s.coeffs[i + j] = &s.coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        s
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Exact multiples of e^{k h} render in the factored `e(k)` form the
        // grammar accepts, rather than as expanded coefficient lists.
        if let Some((c, k)) = self.as_exponential() {
            let r = c.rational_part();
            return if c.is_rational() && r.is_one() {
                write!(f, "e({k})")
            } else if c.is_rational() && (-r).is_one() {
                write!(f, "-e({k})")
            } else {
                write!(f, "{c}*e({k})")
            };
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Pull the sign out of single-term coefficients so that the
            // rendering reads `a - b*h` rather than `a + -b*h`.
            let (neg, body) = match c.as_single_term() {
                Some((r, _)) if r.is_negative() => (true, format!("{}", -c)),
                _ => (false, format!("{c}")),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let wrapped = if body.contains(' ') {
                format!("({body})")
            } else {
                body
            };
            match k {
                0 => write!(f, "{wrapped}")?,
                1 => {
                    if wrapped == "1" {
                        write!(f, "h")?
                    } else {
                        write!(f, "{wrapped}*h")?
                    }
                }
                _ => {
                    if wrapped == "1" {
                        write!(f, "h^{k}")?
                    } else {
                        write!(f, "{wrapped}*h^{k}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self} + O(h^{})]", self.order)
    }
}
