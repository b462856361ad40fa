//! Noncommutative polynomial algebras presented by confluent rewriting
//! systems, together with their commutative (classical) variants.
//!
//! Two deformed algebras are built in:
//!
//! * the quantum plane `Plane`: generators `x < y` with `y x -> e^{-h} x y`;
//! * the quantum 2x2 matrix algebra `M2`: generators `a < b < c < d` with
//!   ```text
//!   b a -> e^{-h} a b        c a -> e^{-h} a c
//!   d b -> e^{-h} b d        d c -> e^{-h} c d
//!   c b -> b c               d a -> a d - (e^{h} - e^{-h}) b c
//!   ```
//!
//! Every rewrite step either keeps the letter multiset and removes one
//! inversion, or (for the extra `b c` branch of `d a`) strictly lowers the
//! number of `a`/`d` letters, so rewriting terminates; the systems are
//! confluent, which the test suite checks by comparing rewriting strategies
//! on random words. Polynomials are stored on the sorted (PBW) monomial
//! basis with [`HSeries`] coefficients.

use crate::error::{Error, Result};
use crate::qarith::hexp_int;
use crate::scalar::{HSeries, RadicalScalar};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

mod parse;
pub use parse::parse_poly;

/// The built-in algebras.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AlgebraKind {
    Plane,
    PlaneClassical,
    M2,
    M2Classical,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Plane => "plane",
            AlgebraKind::PlaneClassical => "plane-classical",
            AlgebraKind::M2 => "m2",
            AlgebraKind::M2Classical => "m2-classical",
        }
    }

    pub fn generators(self) -> &'static [&'static str] {
        match self {
            AlgebraKind::Plane | AlgebraKind::PlaneClassical => &["x", "y"],
            AlgebraKind::M2 | AlgebraKind::M2Classical => &["a", "b", "c", "d"],
        }
    }

    pub fn gen_count(self) -> usize {
        self.generators().len()
    }

    pub fn is_deformed(self) -> bool {
        matches!(self, AlgebraKind::Plane | AlgebraKind::M2)
    }

    /// The commutative algebra on the same generators.
    pub fn classical(self) -> AlgebraKind {
        match self {
            AlgebraKind::Plane | AlgebraKind::PlaneClassical => AlgebraKind::PlaneClassical,
            AlgebraKind::M2 | AlgebraKind::M2Classical => AlgebraKind::M2Classical,
        }
    }

    /// The deformed algebra on the same generators.
    pub fn deformed(self) -> AlgebraKind {
        match self {
            AlgebraKind::Plane | AlgebraKind::PlaneClassical => AlgebraKind::Plane,
            AlgebraKind::M2 | AlgebraKind::M2Classical => AlgebraKind::M2,
        }
    }
}

/// An algebra together with the total-degree cap enforced by products.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AlgebraDescriptor {
    pub kind: AlgebraKind,
    pub max_degree: u32,
}

pub const DEFAULT_MAX_DEGREE: u32 = 16;

impl AlgebraDescriptor {
    pub fn new(kind: AlgebraKind) -> Self {
        Self {
            kind,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }

    pub fn with_max_degree(kind: AlgebraKind, max_degree: u32) -> Self {
        Self { kind, max_degree }
    }
}

/// Exponent vector of a sorted monomial. Algebras with two generators use
/// the first two slots; trailing slots stay zero, so ordering and hashing
/// are uniform.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono(pub [u16; 4]);

impl Mono {
    pub fn unit() -> Self {
        Mono([0; 4])
    }

    pub fn from_exponents(es: &[u16]) -> Self {
        let mut m = [0u16; 4];
        m[..es.len()].copy_from_slice(es);
        Mono(m)
    }

    pub fn generator(idx: usize) -> Self {
        let mut m = [0u16; 4];
        m[idx] = 1;
        Mono(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, idx: usize) -> u16 {
        self.0[idx]
    }

    /// The sorted word `g_0^{e_0} g_1^{e_1} ...` as generator indices.
    pub fn word(&self) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (g, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                w.push(g as u8);
            }
        }
        w
    }

    pub fn checked_mul(&self, other: &Mono) -> Option<Mono> {
        let mut m = [0u16; 4];
        for i in 0..4 {
            m[i] = self.0[i].checked_add(other.0[i])?;
        }
        Some(Mono(m))
    }

    pub fn render(&self, kind: AlgebraKind) -> String {
        let names = kind.generators();
        let mut parts = Vec::new();
        for (g, &e) in self.0.iter().enumerate().take(names.len()) {
            match e {
                0 => {}
                1 => parts.push(names[g].to_string()),
                _ => parts.push(format!("{}^{}", names[g], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials of the given total degree, most-significant generator
/// first (`a^k` before `a^{k-1} b`, ..., `d^k` last).
pub fn monomials_of_degree(gen_count: usize, degree: u32) -> Vec<Mono> {
    fn rec(gen_count: usize, slot: usize, left: u32, cur: &mut [u16; 4], out: &mut Vec<Mono>) {
        if slot == gen_count - 1 {
            cur[slot] = left as u16;
            out.push(Mono(*cur));
            cur[slot] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[slot] = e as u16;
            rec(gen_count, slot + 1, left - e, cur, out);
        }
        cur[slot] = 0;
    }
    let mut out = Vec::new();
    let mut cur = [0u16; 4];
    rec(gen_count, 0, degree, &mut cur, &mut out);
    out
}

/// Which inversion a rewrite pass reduces first. The two strategies must
/// produce identical normal forms (confluence); the tests rely on that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RewriteStrategy {
    LeftmostFirst,
    RightmostFirst,
}

/// The rewrite rules of an algebra at a fixed truncation order.
struct RuleSet {
    kind: AlgebraKind,
    /// e^{-h} (or 1 classically) for the coefficient-swap rules.
    swap: HSeries,
    /// -(e^{h} - e^{-h}) (or 0) for the extra `b c` branch of `d a`.
    da_extra: HSeries,
}

impl RuleSet {
    fn new(kind: AlgebraKind, order: usize) -> Self {
        let (swap, da_extra) = if kind.is_deformed() {
            (
                hexp_int(-1, order),
                &hexp_int(-1, order) - &hexp_int(1, order),
            )
        } else {
            (HSeries::one(order), HSeries::zero(order))
        };
        Self {
            kind,
            swap,
            da_extra,
        }
    }

    /// Replacements for the adjacent pair `hi lo` (with `hi > lo`), as
    /// `(coefficient, [first, second])` alternatives.
    fn apply(&self, hi: u8, lo: u8) -> Vec<(HSeries, [u8; 2])> {
        debug_assert!(hi > lo);
        match self.kind {
            AlgebraKind::Plane | AlgebraKind::PlaneClassical => {
                vec![(self.swap.clone(), [lo, hi])]
            }
            AlgebraKind::M2Classical => vec![(HSeries::one(self.swap.order()), [lo, hi])],
            AlgebraKind::M2 => match (hi, lo) {
                (1, 0) | (2, 0) | (3, 1) | (3, 2) => vec![(self.swap.clone(), [lo, hi])],
                (2, 1) => vec![(HSeries::one(self.swap.order()), [lo, hi])],
                (3, 0) => {
                    let mut out = vec![(HSeries::one(self.swap.order()), [0, 3])];
                    if !self.da_extra.is_zero() {
                        out.push((self.da_extra.clone(), [1, 2]));
                    }
                    out
                }
                _ => unreachable!("pair ({hi}, {lo})"),
            },
        }
    }
}

/// Rewrite an arbitrary word of generator indices to its normal form on the
/// sorted monomial basis.
pub fn normal_form(alg: &AlgebraDescriptor, word: &[u8], order: usize) -> Result<NCPoly> {
    normal_form_with_strategy(alg, word, order, RewriteStrategy::LeftmostFirst)
}

pub fn normal_form_with_strategy(
    alg: &AlgebraDescriptor,
    word: &[u8],
    order: usize,
    strategy: RewriteStrategy,
) -> Result<NCPoly> {
    let n = alg.kind.gen_count();
    for &g in word {
        if g as usize >= n {
            return Err(Error::UnknownGenerator(format!("generator index {g}")));
        }
    }
    if word.len() as u32 > alg.max_degree {
        return Err(Error::DegreeOverflow {
            degree: word.len() as u32,
            cap: alg.max_degree,
        });
    }
    let terms = rewrite(alg.kind, word, order, strategy);
    Ok(NCPoly {
        alg: *alg,
        order,
        terms,
    })
}

fn find_inversion(word: &[u8], strategy: RewriteStrategy) -> Option<usize> {
    match strategy {
        RewriteStrategy::LeftmostFirst => {
            (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1])
        }
        RewriteStrategy::RightmostFirst => (0..word.len().saturating_sub(1))
            .rev()
            .find(|&i| word[i] > word[i + 1]),
    }
}

fn rewrite(
    kind: AlgebraKind,
    word: &[u8],
    order: usize,
    strategy: RewriteStrategy,
) -> BTreeMap<Mono, HSeries> {
    let rules = RuleSet::new(kind, order);
    let mut done: BTreeMap<Mono, HSeries> = BTreeMap::new();
    let mut pending: BTreeMap<Vec<u8>, HSeries> = BTreeMap::new();
    pending.insert(word.to_vec(), HSeries::one(order));
    while let Some((w, c)) = pending.pop_first() {
        match find_inversion(&w, strategy) {
            None => {
                let mono = word_to_mono(&w);
                merge_term(&mut done, mono, c);
            }
            Some(i) => {
                for (rc, pair) in rules.apply(w[i], w[i + 1]) {
                    let mut nw = w.clone();
                    nw[i] = pair[0];
                    nw[i + 1] = pair[1];
                    let nc = &c * &rc;
                    if nc.is_zero() {
                        continue;
                    }
                    use std::collections::btree_map::Entry;
                    match pending.entry(nw) {
                        Entry::Vacant(e) => {
                            e.insert(nc);
                        }
                        Entry::Occupied(mut e) => {
                            let v = e.get() + &nc;
                            if v.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = v;
                            }
                        }
                    }
                }
            }
        }
    }
    done
}

fn word_to_mono(word: &[u8]) -> Mono {
    let mut m = [0u16; 4];
    for &g in word {
        m[g as usize] += 1;
    }
    Mono(m)
}

fn merge_term(terms: &mut BTreeMap<Mono, HSeries>, mono: Mono, c: HSeries) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(mono) {
        Entry::Vacant(e) => {
            e.insert(c);
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

type MulCache = Mutex<HashMap<(AlgebraKind, usize, Mono, Mono), Arc<BTreeMap<Mono, HSeries>>>>;

fn mul_cache() -> &'static MulCache {
    static CACHE: OnceLock<MulCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Product of two sorted basis monomials, memoized per algebra and order.
fn mono_product(kind: AlgebraKind, u: Mono, v: Mono, order: usize) -> Arc<BTreeMap<Mono, HSeries>> {
    if let Some(hit) = mul_cache().lock().unwrap().get(&(kind, order, u, v)) {
        return hit.clone();
    }
    let mut word = u.word();
    word.extend_from_slice(&v.word());
    let map = Arc::new(rewrite(kind, &word, order, RewriteStrategy::LeftmostFirst));
    mul_cache()
        .lock()
        .unwrap()
        .insert((kind, order, u, v), map.clone());
    map
}

/// A polynomial on the sorted monomial basis of one of the built-in
/// algebras, with truncated series coefficients. Zero coefficients are
/// never stored and every coefficient is truncated at the polynomial's
/// order, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    alg: AlgebraDescriptor,
    order: usize,
    terms: BTreeMap<Mono, HSeries>,
}

impl NCPoly {
    pub fn zero(alg: &AlgebraDescriptor, order: usize) -> Self {
        Self {
            alg: *alg,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &AlgebraDescriptor, order: usize) -> Self {
        Self::monomial(alg, Mono::unit(), HSeries::one(order), order)
    }

    pub fn generator(alg: &AlgebraDescriptor, idx: usize, order: usize) -> Result<Self> {
        if idx >= alg.kind.gen_count() {
            return Err(Error::UnknownGenerator(format!("generator index {idx}")));
        }
        Ok(Self::monomial(
            alg,
            Mono::generator(idx),
            HSeries::one(order),
            order,
        ))
    }

    pub fn monomial(alg: &AlgebraDescriptor, mono: Mono, coeff: HSeries, order: usize) -> Self {
        let mut p = Self::zero(alg, order);
        p.add_term(mono, coeff);
        p
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.alg
    }

    pub fn kind(&self) -> AlgebraKind {
        self.alg.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &HSeries)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a basis monomial (zero when absent).
    pub fn coeff(&self, mono: &Mono) -> HSeries {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| HSeries::zero(self.order))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Add `coeff * mono`, truncating the coefficient to the polynomial's
    /// order and dropping it if zero.
    pub fn add_term(&mut self, mono: Mono, coeff: HSeries) {
        assert!(
            coeff.order() >= self.order,
            "coefficient order {} below polynomial order {}",
            coeff.order(),
            self.order
        );
        merge_term(&mut self.terms, mono, coeff.truncate(self.order));
    }

    pub fn scale(&self, c: &HSeries) -> Self {
        let order = self.order.min(c.order());
        let mut p = Self::zero(&self.alg, order);
        for (m, v) in &self.terms {
            p.add_term(*m, v * c);
        }
        p
    }

    pub fn scale_scalar(&self, c: &RadicalScalar) -> Self {
        let mut p = Self::zero(&self.alg, self.order);
        for (m, v) in &self.terms {
            p.add_term(*m, v.scale(c));
        }
        p
    }

    /// Truncate all coefficients to a lower order.
    pub fn truncate_order(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut p = Self::zero(&self.alg, order);
        for (m, v) in &self.terms {
            p.add_term(*m, v.truncate(order));
        }
        p
    }

    /// Reinterpret the terms in another algebra on the same generators
    /// (used for classical-limit comparisons).
    pub fn with_kind(&self, kind: AlgebraKind) -> Self {
        assert_eq!(kind.gen_count(), self.alg.kind.gen_count());
        Self {
            alg: AlgebraDescriptor {
                kind,
                max_degree: self.alg.max_degree,
            },
            order: self.order,
            terms: self.terms.clone(),
        }
    }

    pub fn mul(&self, rhs: &NCPoly) -> Result<NCPoly> {
        if self.alg.kind != rhs.alg.kind {
            return Err(Error::AlgebraMismatch(
                self.alg.kind.name(),
                rhs.alg.kind.name(),
            ));
        }
        let order = self.order.min(rhs.order);
        let cap = self.alg.max_degree.min(rhs.alg.max_degree);
        let alg = AlgebraDescriptor {
            kind: self.alg.kind,
            max_degree: cap,
        };
        let mut out = NCPoly::zero(&alg, order);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let degree = m1.degree() + m2.degree();
                if degree > cap {
                    return Err(Error::DegreeOverflow { degree, cap });
                }
                let c = &c1.truncate(order) * &c2.truncate(order);
                if c.is_zero() {
                    continue;
                }
                for (m, rc) in mono_product(alg.kind, *m1, *m2, order).iter() {
                    out.add_term(*m, rc * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<NCPoly> {
        let mut acc = NCPoly::one(&self.alg, self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl std::ops::Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        assert_eq!(self.alg.kind, rhs.alg.kind, "algebra mismatch in addition");
        let order = self.order.min(rhs.order);
        let mut p = self.truncate_order(order);
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.truncate(order));
        }
        p
    }
}

impl std::ops::Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self + &-rhs
    }
}

impl std::ops::Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let mut p = NCPoly::zero(&self.alg, self.order);
        for (m, c) in &self.terms {
            p.add_term(*m, -c);
        }
        p
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest generators first reads more naturally
        for (m, c) in self.terms.iter().rev() {
            let body = format!("{c}");
            let (neg, body) = if let Some(stripped) = body.strip_prefix('-') {
                if !body.contains(' ') {
                    (true, stripped.to_string())
                } else {
                    (false, body)
                }
            } else {
                (false, body)
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
            let coeff = if body.contains(' ') {
                format!("({body})")
            } else {
                body
            };
            let mono = m.render(self.alg.kind);
            if mono == "1" {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}: {self} + O(h^{})]",
            self.alg.kind.name(),
            self.order
        )
    }
}

/// The quantum determinant `a d - e^{h} b c` of `M2` (the ordinary
/// determinant `a d - b c` for `M2Classical`). It is central in `M2`.
pub fn qdet(alg: &AlgebraDescriptor, order: usize) -> Result<NCPoly> {
    match alg.kind {
        AlgebraKind::M2 | AlgebraKind::M2Classical => {
            let mut p = NCPoly::zero(alg, order);
            p.add_term(Mono([1, 0, 0, 1]), HSeries::one(order));
            let coeff = if alg.kind.is_deformed() {
                hexp_int(1, order)
            } else {
                HSeries::one(order)
            };
            p.add_term(Mono([0, 1, 1, 0]), -&coeff);
            Ok(p)
        }
        _ => Err(Error::DomainError(format!(
            "determinant is defined on the matrix algebras, not {}",
            alg.kind.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plane() -> AlgebraDescriptor {
        AlgebraDescriptor::new(AlgebraKind::Plane)
    }

    fn m2() -> AlgebraDescriptor {
        AlgebraDescriptor::new(AlgebraKind::M2)
    }

    #[test]
    fn plane_normal_form_swaps_with_weight() {
        // y x -> e^{-h} x y
        let p = normal_form(&plane(), &[1, 0], 6).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&Mono([1, 1, 0, 0])), hexp_int(-1, 6));
        // (xy)(xy) = e^{-h} x^2 y^2
        let xy = NCPoly::monomial(&plane(), Mono([1, 1, 0, 0]), HSeries::one(6), 6);
        let sq = xy.mul(&xy).unwrap();
        assert_eq!(sq.num_terms(), 1);
        assert_eq!(sq.coeff(&Mono([2, 2, 0, 0])), hexp_int(-1, 6));
    }

    #[test]
    fn m2_exchange_relations() {
        let order = 6;
        // d a = a d - (e^h - e^{-h}) b c
        let p = normal_form(&m2(), &[3, 0], order).unwrap();
        assert_eq!(p.coeff(&Mono([1, 0, 0, 1])), HSeries::one(order));
        assert_eq!(
            p.coeff(&Mono([0, 1, 1, 0])),
            &hexp_int(-1, order) - &hexp_int(1, order)
        );
        // b a = e^{-h} a b, c b = b c
        let p = normal_form(&m2(), &[1, 0], order).unwrap();
        assert_eq!(p.coeff(&Mono([1, 1, 0, 0])), hexp_int(-1, order));
        let p = normal_form(&m2(), &[2, 1], order).unwrap();
        assert_eq!(p.coeff(&Mono([0, 1, 1, 0])), HSeries::one(order));
    }

    #[test]
    fn quantum_determinant_is_central() {
        let order = 6;
        let det = qdet(&m2(), order).unwrap();
        for idx in 0..4 {
            let g = NCPoly::generator(&m2(), idx, order).unwrap();
            let left = det.mul(&g).unwrap();
            let right = g.mul(&det).unwrap();
            assert_eq!(left, right, "determinant commutes with generator {idx}");
        }
        // and the classical determinant is just a d - b c
        let cdet = qdet(&AlgebraDescriptor::new(AlgebraKind::M2Classical), order).unwrap();
        assert_eq!(cdet.coeff(&Mono([0, 1, 1, 0])), -&HSeries::one(order));
    }

    #[test]
    fn classical_variants_commute() {
        let order = 4;
        for kind in [AlgebraKind::PlaneClassical, AlgebraKind::M2Classical] {
            let alg = AlgebraDescriptor::new(kind);
            for i in 0..kind.gen_count() {
                for j in 0..kind.gen_count() {
                    let gi = NCPoly::generator(&alg, i, order).unwrap();
                    let gj = NCPoly::generator(&alg, j, order).unwrap();
                    assert_eq!(gi.mul(&gj).unwrap(), gj.mul(&gi).unwrap());
                }
            }
        }
    }

    #[test]
    fn deformed_products_commute_at_order_one() {
        // truncating to order 1 kills the deformation entirely
        let order = 1;
        let a = NCPoly::generator(&m2(), 0, order).unwrap();
        let d = NCPoly::generator(&m2(), 3, order).unwrap();
        assert_eq!(a.mul(&d).unwrap(), d.mul(&a).unwrap());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let alg = AlgebraDescriptor::with_max_degree(AlgebraKind::Plane, 8);
        let x5 = NCPoly::monomial(&alg, Mono([5, 0, 0, 0]), HSeries::one(4), 4);
        let y4 = NCPoly::monomial(&alg, Mono([0, 4, 0, 0]), HSeries::one(4), 4);
        assert!(matches!(
            x5.mul(&y4),
            Err(Error::DegreeOverflow { degree: 9, cap: 8 })
        ));
        assert!(normal_form(&alg, &[0; 9], 4).is_err());
    }

    #[test]
    fn monomial_enumeration_is_graded_and_ordered() {
        let ms = monomials_of_degree(4, 2);
        assert_eq!(ms.len(), 10);
        assert_eq!(ms[0], Mono([2, 0, 0, 0]));
        assert_eq!(ms[1], Mono([1, 1, 0, 0]));
        assert_eq!(ms[9], Mono([0, 0, 0, 2]));
        assert!(ms.iter().all(|m| m.degree() == 2));
        let ms = monomials_of_degree(2, 5);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], Mono([5, 0, 0, 0]));
    }

    fn random_word(rng: &mut ChaCha8Rng, gen_count: usize, max_len: usize) -> Vec<u8> {
        let len = rng.gen_range(0..=max_len);
        (0..len)
            .map(|_| rng.gen_range(0..gen_count) as u8)
            .collect()
    }

    #[test]
    fn rewriting_is_confluent_across_strategies() {
        // 500 random words per algebra: leftmost-first and rightmost-first
        // reduction orders must give identical normal forms.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let order = 5;
        for alg in [plane(), m2()] {
            for _ in 0..500 {
                let w = random_word(&mut rng, alg.kind.gen_count(), 8);
                let a = normal_form_with_strategy(&alg, &w, order, RewriteStrategy::LeftmostFirst)
                    .unwrap();
                let b = normal_form_with_strategy(&alg, &w, order, RewriteStrategy::RightmostFirst)
                    .unwrap();
                assert_eq!(a, b, "word {w:?}");
            }
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng, alg: &AlgebraDescriptor, order: usize) -> NCPoly {
        let mut p = NCPoly::zero(alg, order);
        for _ in 0..rng.gen_range(1..=3) {
            let mono = word_to_mono(&random_word(rng, alg.kind.gen_count(), 4));
            let num = rng.gen_range(-4i64..5);
            let den = rng.gen_range(1i64..4);
            let mut coeff = HSeries::from_rational_coeffs(
                vec![crate::scalar::Rational::new(num.into(), den.into())],
                order,
            );
            if rng.gen_bool(0.3) {
                coeff.set_coeff(1, RadicalScalar::sqrt_int(rng.gen_range(2u64..6)));
            }
            p.add_term(mono, coeff);
        }
        p
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
        let order = 5;
        for alg in [plane(), m2()] {
            for _ in 0..60 {
                let p = random_poly(&mut rng, &alg, order);
                let q = random_poly(&mut rng, &alg, order);
                let r = random_poly(&mut rng, &alg, order);
                let left = p.mul(&q).unwrap().mul(&r).unwrap();
                let right = p.mul(&q.mul(&r).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn display_renders_normal_form() {
        let order = 3;
        let p = normal_form(&m2(), &[3, 0], order).unwrap();
        assert_eq!(format!("{p}"), "a*d - 2*h*b*c");
        let order = 5;
        let p = normal_form(&m2(), &[3, 0], order).unwrap();
        assert_eq!(format!("{p}"), "a*d + (-2*h - 1/3*h^3)*b*c");
        assert_eq!(format!("{}", NCPoly::zero(&m2(), 4)), "0");
    }
}
