//! Coupling coefficients for tensor products of irreducibles.
//!
//! The tensor product `V_{j1} (x) V_{j2}` decomposes into irreducibles with
//! `j = |j1-j2| .. j1+j2`. The generators act on the tensor product through
//!
//! ```text
//! E (v (x) w) = E v (x) e^{h H} w + v (x) E w
//! F (v (x) w) = F v (x) w         + e^{-h H} v (x) F w
//! H (v (x) w) = H v (x) w         + v (x) H w
//! ```
//!
//! (twists absent in the classical case). For each `j` the highest-weight
//! vector is found by back-substitution along the bidiagonal kernel chain:
//! the coefficient of each tensor basis vector of weight `j+1` in `E v`
//! couples exactly two unknowns, the anchor `|j1, j-j1>` component is set
//! to `1`, and the rest follow. The vector is then normalized by the square
//! root of the plain (bilinear, unconjugated) sum of squares and lowered
//! through its weight space. The rows produced this way are orthonormal and
//! complete for the plain bilinear form, which the tests check directly.

use super::{lower_coeff, raise_coeff, SlGen};
use crate::error::{Error, Result};
use crate::qarith::{hexp, HalfInt};
use crate::scalar::HSeries;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// A vector in `V_{j1} (x) V_{j2}` with series coefficients on the tensor
/// weight basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct TensorVec {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub deformed: bool,
    pub order: usize,
    pub coeffs: BTreeMap<(HalfInt, HalfInt), HSeries>,
}

impl TensorVec {
    pub fn zero(j1: HalfInt, j2: HalfInt, deformed: bool, order: usize) -> Self {
        Self {
            j1,
            j2,
            deformed,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, m1: HalfInt, m2: HalfInt, c: HSeries) {
        debug_assert!(
            m1.abs() <= self.j1 && m2.abs() <= self.j2,
            "weight out of range"
        );
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry((m1, m2)) {
            Entry::Vacant(e) => {
                e.insert(c.truncate(self.order));
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &HSeries) -> Self {
        let mut out = Self::zero(self.j1, self.j2, self.deformed, self.order);
        for ((m1, m2), v) in &self.coeffs {
            out.add_term(*m1, *m2, v * c);
        }
        out
    }

    /// Plain bilinear pairing (coefficients multiplied, never conjugated).
    pub fn dot_plain(&self, other: &TensorVec) -> HSeries {
        let mut acc = HSeries::zero(self.order.min(other.order));
        for (key, v) in &self.coeffs {
            if let Some(w) = other.coeffs.get(key) {
                acc = &acc + &(v * w);
            }
        }
        acc
    }

    /// Action of a generator through the coproduct above.
    pub fn apply(&self, gen: SlGen) -> TensorVec {
        let mut out = Self::zero(self.j1, self.j2, self.deformed, self.order);
        let order = self.order;
        for ((m1, m2), c) in &self.coeffs {
            let (m1, m2) = (*m1, *m2);
            match gen {
                SlGen::E => {
                    let up1 = raise_coeff(self.deformed, self.j1, m1, order);
                    if !up1.is_zero() {
                        let twist = if self.deformed {
                            hexp(m2 + m2, order)
                        } else {
                            HSeries::one(order)
                        };
                        out.add_term(m1 + 1, m2, &(&up1 * &twist) * c);
                    }
                    let up2 = raise_coeff(self.deformed, self.j2, m2, order);
                    if !up2.is_zero() {
                        out.add_term(m1, m2 + 1, &up2 * c);
                    }
                }
                SlGen::F => {
                    let down1 = lower_coeff(self.deformed, self.j1, m1, order);
                    if !down1.is_zero() {
                        out.add_term(m1 - 1, m2, &down1 * c);
                    }
                    let down2 = lower_coeff(self.deformed, self.j2, m2, order);
                    if !down2.is_zero() {
                        let twist = if self.deformed {
                            hexp(-(m1 + m1), order)
                        } else {
                            HSeries::one(order)
                        };
                        out.add_term(m1, m2 - 1, &(&down2 * &twist) * c);
                    }
                }
                SlGen::H => {
                    let w = HSeries::from_int((m1 + m2).twice(), order);
                    out.add_term(m1, m2, &w * c);
                }
            }
        }
        out
    }
}

/// The coupling table of one tensor product: for every `(j, m)` the coupled
/// basis vector expressed on the tensor weight basis.
#[derive(Clone, Debug)]
pub struct CGTable {
    j1: HalfInt,
    j2: HalfInt,
    deformed: bool,
    order: usize,
    rows: BTreeMap<(HalfInt, HalfInt), TensorVec>,
}

impl CGTable {
    pub fn j1(&self) -> HalfInt {
        self.j1
    }

    pub fn j2(&self) -> HalfInt {
        self.j2
    }

    pub fn deformed(&self) -> bool {
        self.deformed
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The coupled spins, smallest first.
    pub fn js(&self) -> Vec<HalfInt> {
        HalfInt::range_inclusive((self.j1 - self.j2).abs(), self.j1 + self.j2).collect()
    }

    /// Coupling coefficient of `|j1 m1> (x) |j2, m - m1>` in `|j m>`.
    pub fn coeff(&self, j: HalfInt, m: HalfInt, m1: HalfInt) -> HSeries {
        self.rows
            .get(&(j, m))
            .and_then(|v| v.coeffs.get(&(m1, m - m1)))
            .cloned()
            .unwrap_or_else(|| HSeries::zero(self.order))
    }

    /// All nonzero components of the coupled vector `|j m>`, as
    /// `((m1, m2), coefficient)` pairs.
    pub fn row(&self, j: HalfInt, m: HalfInt) -> Vec<((HalfInt, HalfInt), HSeries)> {
        self.rows
            .get(&(j, m))
            .map(|v| v.coeffs.iter().map(|(k, c)| (*k, c.clone())).collect())
            .unwrap_or_default()
    }

    #[cfg(test)]
    pub(crate) fn row_vec(&self, j: HalfInt, m: HalfInt) -> Option<&TensorVec> {
        self.rows.get(&(j, m))
    }

    fn build(j1: HalfInt, j2: HalfInt, deformed: bool, order: usize) -> Result<CGTable> {
        if j1.is_negative() || j2.is_negative() {
            return Err(Error::DomainError(format!(
                "spins must be non-negative, got {j1}, {j2}"
            )));
        }
        let mut rows = BTreeMap::new();
        for j in HalfInt::range_inclusive((j1 - j2).abs(), j1 + j2) {
            // Highest-weight vector at weight j, anchored at m1 = j1.
            let mut hw = TensorVec::zero(j1, j2, deformed, order);
            hw.add_term(j1, j - j1, HSeries::one(order));
            let m1_min = (-j1).max(j - j2);
            let mut m1 = j1 - 1;
            while m1 >= m1_min {
                // Coefficient of |m1+1> (x) |j-m1> in E v couples v(m1) and
                // v(m1+1):  up1(m1) twist(j-m1) v(m1) + up2(j-m1-1) v(m1+1) = 0.
                let up1 = raise_coeff(deformed, j1, m1, order);
                let twist = if deformed {
                    hexp((j - m1) + (j - m1), order)
                } else {
                    HSeries::one(order)
                };
                let c1 = &up1 * &twist;
                let c2 = raise_coeff(deformed, j2, j - m1 - 1, order);
                let prev = hw
                    .coeffs
                    .get(&(m1 + 1, j - m1 - 1))
                    .cloned()
                    .ok_or_else(|| {
                        Error::Internal(format!("missing chain entry at m1 = {}", m1 + 1))
                    })?;
                let value = -&(&(&c2 * &prev) * &c1.inv()?);
                hw.add_term(m1, j - m1, value);
                m1 = m1 - 1;
            }
            if !hw.apply(SlGen::E).is_zero() {
                return Err(Error::Internal(format!(
                    "highest-weight candidate at j = {j} is not annihilated by the raising generator"
                )));
            }
            let norm2 = hw.dot_plain(&hw);
            let norm_inv = norm2.sqrt()?.inv()?;
            let mut cur = hw.scale(&norm_inv);
            rows.insert((j, j), cur.clone());
            // Lower through the weight space.
            let mut m = j;
            while m > -j {
                let denom = lower_coeff(deformed, j, m, order);
                cur = cur.apply(SlGen::F).scale(&denom.inv()?);
                rows.insert((j, m - 1), cur.clone());
                m = m - 1;
            }
        }
        Ok(CGTable {
            j1,
            j2,
            deformed,
            order,
            rows,
        })
    }
}

type CgKey = (HalfInt, HalfInt, bool, usize);
type CgCache = Mutex<HashMap<CgKey, Arc<CGTable>>>;

fn cg_cache() -> &'static CgCache {
    static CACHE: OnceLock<CgCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The coupling table for `V_{j1} (x) V_{j2}`, computed once per
/// `(j1, j2, deformed, order)` and shared.
pub fn cg_table(j1: HalfInt, j2: HalfInt, deformed: bool, order: usize) -> Result<Arc<CGTable>> {
    if let Some(hit) = cg_cache().lock().unwrap().get(&(j1, j2, deformed, order)) {
        return Ok(hit.clone());
    }
    let table = Arc::new(CGTable::build(j1, j2, deformed, order)?);
    cg_cache()
        .lock()
        .unwrap()
        .insert((j1, j2, deformed, order), table.clone());
    Ok(table)
}
