//! Irreducible tensor bases of the 2x2 matrix algebras and the
//! symmetry-preserving ordering prescription that identifies them.
//!
//! The deformed matrix algebra decomposes under the two commuting
//! symmetry copies into components labelled by a spin `j`, each spanned by
//! elements `T(j; m, m')` generated from the top corner `d^{2j}` by
//! lowering both indices; powers of the central determinant supply the
//! multiplicity.  Expansion of a sorted monomial over this basis
//! ([`m2_monomial_coords`]) and of a basis element over sorted monomials
//! ([`m2_irred_expand`]) are mutually inverse changes of basis, and the
//! symmetry-preserving prescription is their composition: read off the
//! undeformed coordinates of a commutative monomial, then reassemble the
//! deformed basis elements with the same coordinates.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::ncalg::{qdet, AlgebraDescriptor, AlgebraKind, Mono, NCPoly};
use crate::qarith::{binom_rational, qbinom, HalfInt};
use crate::rep::{cg_table, coproduct_action, lower_coeff, CopySide, SlGen};
use crate::scalar::{HSeries, RadicalScalar};

fn descriptor(deformed: bool) -> AlgebraDescriptor {
    let kind = if deformed {
        AlgebraKind::M2
    } else {
        AlgebraKind::M2Classical
    };
    AlgebraDescriptor::new(kind)
}

fn check_index(j: HalfInt, m: HalfInt, label: &str) -> Result<()> {
    if j.is_negative() || m.abs() > j || !(j - m).is_integer() {
        return Err(Error::DomainError(format!(
            "invalid weight pair (j, {label}) = ({j}, {m})"
        )));
    }
    Ok(())
}

type BasisKey = (i64, i64, i64, bool, usize);

fn basis_cache() -> &'static Mutex<HashMap<BasisKey, Arc<NCPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<BasisKey, Arc<NCPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The irreducible basis element `T(j; m, m')` of the (deformed or
/// undeformed) matrix algebra: the polynomial obtained from `d^{2j}` by
/// lowering the first index to `m` and the second to `m'`, normalized so
/// that each lowering step carries the representation-matrix coefficient.
///
/// The four corner elements are the pure powers `a^{2j}`, `b^{2j}`,
/// `c^{2j}`, `d^{2j}`.
pub fn m2_irred_basis(
    j: HalfInt,
    m: HalfInt,
    mp: HalfInt,
    deformed: bool,
    order: usize,
) -> Result<NCPoly> {
    check_index(j, m, "m")?;
    check_index(j, mp, "m'")?;
    Ok(basis_element(j, m, mp, deformed, order)?.as_ref().clone())
}

fn basis_element(
    j: HalfInt,
    m: HalfInt,
    mp: HalfInt,
    deformed: bool,
    order: usize,
) -> Result<Arc<NCPoly>> {
    let key = (j.twice(), m.twice(), mp.twice(), deformed, order);
    if let Some(p) = basis_cache().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let alg = descriptor(deformed);
    let built = if m == j && mp == j {
        let degree = j.twice();
        if degree as u32 > alg.max_degree {
            return Err(Error::DegreeOverflow {
                degree: degree as u32,
                cap: alg.max_degree,
            });
        }
        NCPoly::monomial(
            &alg,
            Mono::from_exponents(&[0, 0, 0, degree as u16]),
            HSeries::one(order),
            order,
        )
    } else if mp < j {
        // Lower the second index from (m, mp + 1).
        let prev = basis_element(j, m, mp + 1, deformed, order)?;
        let lowered = coproduct_action(SlGen::F, CopySide::Right, &prev)?;
        let step = lower_coeff(deformed, j, mp + 1, order)
            .inv()
            .map_err(internal)?;
        lowered.scale(&step)
    } else {
        // Second index still at the top: lower the first from (m + 1, j).
        let prev = basis_element(j, m + 1, j, deformed, order)?;
        let lowered = coproduct_action(SlGen::F, CopySide::Left, &prev)?;
        let step = lower_coeff(deformed, j, m + 1, order)
            .inv()
            .map_err(internal)?;
        lowered.scale(&step)
    };
    let built = Arc::new(built);
    basis_cache().lock().unwrap().insert(key, built.clone());
    Ok(built)
}

fn internal(e: Error) -> Error {
    Error::Internal(format!(
        "lowering step produced a non-invertible coefficient: {e}"
    ))
}

/// Index data shared by the monomial-to-basis expansions: coupled spins of
/// the letter content and the weight pair of the monomial.
struct MonoWeights {
    j1p: HalfInt,
    j2p: HalfInt,
    n1: HalfInt,
    n2: HalfInt,
    n: HalfInt,
}

fn mono_weights(mono: &Mono) -> MonoWeights {
    let (a, b, c, d) = (
        mono.exponent(0) as i64,
        mono.exponent(1) as i64,
        mono.exponent(2) as i64,
        mono.exponent(3) as i64,
    );
    MonoWeights {
        j1p: HalfInt::from_twice(a + b),
        j2p: HalfInt::from_twice(c + d),
        n1: HalfInt::from_twice(-a - b + c + d),
        n2: HalfInt::from_twice(-a + b - c + d),
        n: HalfInt::from_twice(a + b + c + d),
    }
}

fn sqrt_qbinom_pair(n1: i64, k1: i64, n2: i64, k2: i64, order: usize) -> Result<HSeries> {
    (&qbinom(n1, k1, order)? * &qbinom(n2, k2, order)?).sqrt()
}

fn sqrt_binom_pair(n1: i64, k1: i64, n2: i64, k2: i64, order: usize) -> Result<HSeries> {
    let b = binom_rational(n1, k1)? * binom_rational(n2, k2)?;
    Ok(HSeries::constant(RadicalScalar::sqrt_rational(&b)?, order))
}

/// Expands a sorted monomial of the (deformed or undeformed) matrix
/// algebra over the irreducible basis: returns the spins `j` and
/// coefficients `c_j` with
/// `monomial = sum_j c_j . det^{n-j} T(j; n1, n2)`,
/// where `(n1, n2)` is the weight pair and `2n` the degree of the monomial.
pub fn m2_monomial_coords(
    mono: Mono,
    deformed: bool,
    order: usize,
) -> Result<Vec<(HalfInt, HSeries)>> {
    let w = mono_weights(&mono);
    let (b, c) = (mono.exponent(1) as i64, mono.exponent(2) as i64);
    let a = mono.exponent(0) as i64;
    let d = mono.exponent(3) as i64;
    let table = cg_table(w.j1p, w.j2p, deformed, order)?;
    let scale = if deformed {
        sqrt_qbinom_pair(a + b, b, c + d, c, order)?
            .inv()
            .map_err(internal)?
    } else {
        sqrt_binom_pair(a + b, b, c + d, c, order)?
            .inv()
            .map_err(internal)?
    };
    let low = w.n1.abs().max(w.n2.abs());
    let mut coords = Vec::new();
    for j in HalfInt::range_inclusive(low, w.n) {
        let c1 = table.coeff(j, w.n1, -w.j1p);
        let c2 = table.coeff(j, w.n2, HalfInt::from_twice(b - a));
        let coeff = &(&c1 * &c2) * &scale;
        if !coeff.is_zero() {
            coords.push((j, coeff));
        }
    }
    Ok(coords)
}

/// Expands `det^{n-j} T(j; n1, n2)` over the sorted monomials of degree
/// `2n`.  Inverse of [`m2_monomial_coords`] within the common weight family.
pub fn m2_irred_expand(
    j: HalfInt,
    n1: HalfInt,
    n2: HalfInt,
    n: HalfInt,
    deformed: bool,
    order: usize,
) -> Result<NCPoly> {
    check_index(j, n1, "n1")?;
    check_index(j, n2, "n2")?;
    if n < j || !(n - j).is_integer() {
        return Err(Error::DomainError(format!(
            "degree parameter n = {n} must exceed j = {j} by a whole number"
        )));
    }
    let ab = (n - n1).as_int();
    let cd = (n + n1).as_int();
    let j1p = HalfInt::from_twice(ab);
    let j2p = HalfInt::from_twice(cd);
    let table = cg_table(j1p, j2p, deformed, order)?;
    let anchor = table.coeff(j, n1, -j1p);
    if anchor.is_zero() {
        return Err(Error::Internal(format!(
            "vanishing boundary coupling at j = {j}, n1 = {n1}"
        )));
    }
    let anchor_inv = anchor.inv().map_err(internal)?;
    let alg = descriptor(deformed);
    let mut out = NCPoly::zero(&alg, order);
    for a in 0..=ab {
        let b = ab - a;
        let dc = n2.twice() - (b - a);
        debug_assert_eq!((cd - dc) % 2, 0, "weight family parity");
        let c = (cd - dc) / 2;
        if c < 0 || c > cd {
            continue;
        }
        let d = cd - c;
        let cg = table.coeff(j, n2, HalfInt::from_twice(b - a));
        if cg.is_zero() {
            continue;
        }
        let scale = if deformed {
            sqrt_qbinom_pair(ab, b, cd, c, order)?
        } else {
            sqrt_binom_pair(ab, b, cd, c, order)?
        };
        let coeff = &(&cg * &scale) * &anchor_inv;
        out.add_term(
            Mono::from_exponents(&[a as u16, b as u16, c as u16, d as u16]),
            coeff,
        );
    }
    Ok(out)
}

/// The symmetry-preserving image of one commutative monomial: its
/// undeformed irreducible coordinates recombined with deformed basis
/// expansions, fused into a single double sum over the spin `j` and the
/// shift `k` along the weight family.
pub(super) fn sympres_monomial(
    target: &AlgebraDescriptor,
    mono: Mono,
    order: usize,
) -> Result<NCPoly> {
    let w = mono_weights(&mono);
    let (a, b, c, d) = (
        mono.exponent(0) as i64,
        mono.exponent(1) as i64,
        mono.exponent(2) as i64,
        mono.exponent(3) as i64,
    );
    let cl = cg_table(w.j1p, w.j2p, false, order)?;
    let qt = cg_table(w.j1p, w.j2p, true, order)?;
    let pref = sqrt_binom_pair(a + b, b, c + d, c, order)?
        .inv()
        .map_err(internal)?;
    let mut out = NCPoly::zero(target, order);
    let low = w.n1.abs().max(w.n2.abs());
    for j in HalfInt::range_inclusive(low, w.n) {
        let base =
            &(&cl.coeff(j, w.n1, -w.j1p) * &cl.coeff(j, w.n2, HalfInt::from_twice(b - a))) * &pref;
        if base.is_zero() {
            continue;
        }
        let anchor = qt.coeff(j, w.n1, -w.j1p);
        if anchor.is_zero() {
            return Err(Error::Internal(format!(
                "vanishing boundary coupling at j = {j}, n1 = {}",
                w.n1
            )));
        }
        let anchor_inv = anchor.inv().map_err(internal)?;
        for k in -b.min(c)..=a.min(d) {
            let (a2, b2, c2, d2) = (a - k, b + k, c + k, d - k);
            let cg = qt.coeff(j, w.n2, HalfInt::from_twice(b2 - a2));
            if cg.is_zero() {
                continue;
            }
            let scale = sqrt_qbinom_pair(a + b, b2, c + d, c2, order)?;
            let coeff = &(&(&base * &cg) * &scale) * &anchor_inv;
            out.add_term(
                Mono::from_exponents(&[a2 as u16, b2 as u16, c2 as u16, d2 as u16]),
                coeff,
            );
        }
    }
    Ok(out)
}

/// Applies the symmetry-preserving prescription to a commutative
/// polynomial of the matrix algebra.
///
/// Convenience wrapper; to amortize matrix construction across many calls,
/// hold an [`super::OrderingMap`] instead.
pub fn m2_sympres_ordering(p: &NCPoly) -> Result<NCPoly> {
    super::OrderingMap::new(super::OrderingKind::SymPres, AlgebraKind::M2, p.order()).apply(p)
}

/// Outcome of checking the product decomposition
/// `T(j1; m1, m1') T(j2; m2, m2') = sum_j CG CG det^{j1+j2-j} T(j; ...)`
/// over all index combinations of two spins.
#[derive(Clone, Debug)]
pub struct ProductFormulaReport {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub order: usize,
    pub cases: usize,
    /// Index combinations `(m1, m1', m2, m2')` whose decomposition failed.
    pub failures: Vec<String>,
}

impl ProductFormulaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies the irreducible product decomposition of the deformed matrix
/// algebra for all weight indices of two spins: the rewriting-engine
/// product of two basis elements must equal the coupling double sum.
pub fn m2_product_formula_check(
    j1: HalfInt,
    j2: HalfInt,
    order: usize,
) -> Result<ProductFormulaReport> {
    let table = cg_table(j1, j2, true, order)?;
    let alg = descriptor(true);
    let det = qdet(&alg, order)?;
    let mut report = ProductFormulaReport {
        j1,
        j2,
        order,
        cases: 0,
        failures: Vec::new(),
    };
    for m1 in HalfInt::range_inclusive(-j1, j1) {
        for m1p in HalfInt::range_inclusive(-j1, j1) {
            let left = basis_element(j1, m1, m1p, true, order)?;
            for m2 in HalfInt::range_inclusive(-j2, j2) {
                for m2p in HalfInt::range_inclusive(-j2, j2) {
                    let right = basis_element(j2, m2, m2p, true, order)?;
                    let lhs = left.mul(&right)?;
                    let (m, mp) = (m1 + m2, m1p + m2p);
                    let mut rhs = NCPoly::zero(&alg, order);
                    let low = m.abs().max(mp.abs());
                    for j in HalfInt::range_inclusive(low, j1 + j2) {
                        let cc = &table.coeff(j, m, m1) * &table.coeff(j, mp, m1p);
                        if cc.is_zero() {
                            continue;
                        }
                        let s = (j1 + j2 - j).as_int() as u32;
                        let part = det
                            .pow(s)?
                            .mul(basis_element(j, m, mp, true, order)?.as_ref())?;
                        rhs = &rhs + &part.scale(&cc);
                    }
                    report.cases += 1;
                    if lhs != rhs {
                        report
                            .failures
                            .push(format!("(m1, m1', m2, m2') = ({m1}, {m1p}, {m2}, {m2p})"));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::parse_poly;
    use crate::qarith::{hexp_rational, qnum_int};
    use crate::scalar::Rational;

    fn half(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    const ORDER: usize = 6;

    fn m2poly(text: &str) -> NCPoly {
        parse_poly(&descriptor(true), text, ORDER).unwrap()
    }

    #[test]
    fn corners_are_pure_powers() {
        for twice_j in 0..=3i64 {
            let j = half(twice_j);
            let e = twice_j as u16;
            let corner = |m: HalfInt, mp: HalfInt| m2_irred_basis(j, m, mp, true, ORDER).unwrap();
            let alg = descriptor(true);
            let mono = |es: [u16; 4]| {
                NCPoly::monomial(&alg, Mono::from_exponents(&es), HSeries::one(ORDER), ORDER)
            };
            assert_eq!(corner(-j, -j), mono([e, 0, 0, 0]), "a corner, j = {j}");
            assert_eq!(corner(-j, j), mono([0, e, 0, 0]), "b corner, j = {j}");
            assert_eq!(corner(j, -j), mono([0, 0, e, 0]), "c corner, j = {j}");
            assert_eq!(corner(j, j), mono([0, 0, 0, e]), "d corner, j = {j}");
        }
    }

    #[test]
    fn spin_one_interior_elements_match_hand_values() {
        // T(1; 0, 1) = e^{-h/2} sqrt([2]) b d.
        let t01 = m2_irred_basis(half(2), half(0), half(2), true, ORDER).unwrap();
        let scale = hexp_rational(&Rational::new((-1).into(), 2.into()), ORDER);
        let expect = m2poly("b*d").scale(&(&qnum_int(2, ORDER).sqrt().unwrap() * &scale));
        assert_eq!(t01, expect);
        // T(1; 0, 0) = a d + e^{-h} b c.
        let t00 = m2_irred_basis(half(2), half(0), half(0), true, ORDER).unwrap();
        assert_eq!(t00, m2poly("a*d + e(-1)*b*c"));
    }

    #[test]
    fn sorted_ab_and_cd_words_are_single_basis_elements() {
        // a^A b^B equals C(A+B, B)^{-1/2} T(j; -j, (B-A)/2) in the deformed
        // q-binomial normalization, and symmetrically for c^C d^D.
        for a_exp in 0..=3i64 {
            for b_exp in 0..=(3 - a_exp) {
                if a_exp + b_exp == 0 {
                    continue;
                }
                let j = half(a_exp + b_exp);
                let t = m2_irred_basis(j, -j, half(b_exp - a_exp), true, ORDER).unwrap();
                let qb = qbinom(a_exp + b_exp, b_exp, ORDER).unwrap().sqrt().unwrap();
                let mono = NCPoly::monomial(
                    &descriptor(true),
                    Mono::from_exponents(&[a_exp as u16, b_exp as u16, 0, 0]),
                    qb,
                    ORDER,
                );
                assert_eq!(t, mono, "a^{a_exp} b^{b_exp}");
            }
        }
        for c_exp in 0..=3i64 {
            for d_exp in 0..=(3 - c_exp) {
                if c_exp + d_exp == 0 {
                    continue;
                }
                let j = half(c_exp + d_exp);
                let t = m2_irred_basis(j, j, half(d_exp - c_exp), true, ORDER).unwrap();
                let qb = qbinom(c_exp + d_exp, c_exp, ORDER).unwrap().sqrt().unwrap();
                let mono = NCPoly::monomial(
                    &descriptor(true),
                    Mono::from_exponents(&[0, 0, c_exp as u16, d_exp as u16]),
                    qb,
                    ORDER,
                );
                assert_eq!(t, mono, "c^{c_exp} d^{d_exp}");
            }
        }
    }

    #[test]
    fn expansion_agrees_with_det_times_lowering_basis() {
        let alg = descriptor(true);
        let det = qdet(&alg, ORDER).unwrap();
        for twice_j in 0..=3i64 {
            let j = half(twice_j);
            for s in 0..=1u32 {
                let n = j + s as i64;
                for n1 in HalfInt::range_inclusive(-j, j) {
                    for n2 in HalfInt::range_inclusive(-j, j) {
                        let direct = m2_irred_expand(j, n1, n2, n, true, ORDER).unwrap();
                        let built = det
                            .pow(s)
                            .unwrap()
                            .mul(&m2_irred_basis(j, n1, n2, true, ORDER).unwrap())
                            .unwrap();
                        assert_eq!(direct, built, "j = {j}, s = {s}, ({n1}, {n2})");
                    }
                }
            }
        }
    }

    #[test]
    fn coords_and_expansion_invert_each_other() {
        // Every sorted monomial of degree <= 4 is reproduced by expanding
        // its irreducible coordinates, in both algebras.
        for deformed in [true, false] {
            let alg = descriptor(deformed);
            for degree in 0..=4u32 {
                for mono in crate::ncalg::monomials_of_degree(4, degree) {
                    let w = mono_weights(&mono);
                    let coords = m2_monomial_coords(mono, deformed, ORDER).unwrap();
                    let mut rebuilt = NCPoly::zero(&alg, ORDER);
                    for (j, c) in &coords {
                        let part = m2_irred_expand(*j, w.n1, w.n2, w.n, deformed, ORDER).unwrap();
                        rebuilt = &rebuilt + &part.scale(c);
                    }
                    let expect = NCPoly::monomial(&alg, mono, HSeries::one(ORDER), ORDER);
                    assert_eq!(rebuilt, expect, "deformed = {deformed}, {mono:?}");
                }
            }
        }
    }

    #[test]
    fn sympres_fixes_single_letter_powers_and_the_determinant() {
        let alg = descriptor(false);
        for text in ["a^3", "b^2", "c^4", "d"] {
            let p = parse_poly(&alg, text, ORDER).unwrap();
            let img = m2_sympres_ordering(&p).unwrap();
            assert_eq!(img, p.with_kind(AlgebraKind::M2), "{text}");
        }
        // The undeformed determinant maps to the deformed one.
        let det_cl = parse_poly(&alg, "a*d - b*c", ORDER).unwrap();
        let img = m2_sympres_ordering(&det_cl).unwrap();
        assert_eq!(img, m2poly("a*d - e(1)*b*c"));
    }

    #[test]
    fn sympres_splits_the_diagonal_products_as_expected() {
        // phi(ad) = a d - (e^h - e^{-h})/2 b c and
        // phi(bc) = (e^h + e^{-h})/2 b c; their difference recovers the
        // determinant identity.
        let alg = descriptor(false);
        let half_r = Rational::new(1.into(), 2.into());
        let ad = m2_sympres_ordering(&parse_poly(&alg, "a*d", ORDER).unwrap()).unwrap();
        let sinh2 = (&hexp_rational(&Rational::from_integer(1.into()), ORDER)
            - &hexp_rational(&Rational::from_integer((-1).into()), ORDER))
            .scale_rational(&half_r);
        let expect_ad = &m2poly("a*d") - &m2poly("b*c").scale(&sinh2);
        assert_eq!(ad, expect_ad);
        let bc = m2_sympres_ordering(&parse_poly(&alg, "b*c", ORDER).unwrap()).unwrap();
        let cosh2 = (&hexp_rational(&Rational::from_integer(1.into()), ORDER)
            + &hexp_rational(&Rational::from_integer((-1).into()), ORDER))
            .scale_rational(&half_r);
        assert_eq!(bc, m2poly("b*c").scale(&cosh2));
    }

    #[test]
    fn sympres_commutes_with_multiplication_by_the_determinant() {
        let alg = descriptor(false);
        let det_cl = parse_poly(&alg, "a*d - b*c", ORDER).unwrap();
        let det_q = qdet(&descriptor(true), ORDER).unwrap();
        for degree in 0..=2u32 {
            for mono in crate::ncalg::monomials_of_degree(4, degree) {
                let p = NCPoly::monomial(&alg, mono, HSeries::one(ORDER), ORDER);
                let lhs = m2_sympres_ordering(&det_cl.mul(&p).unwrap()).unwrap();
                let rhs = det_q.mul(&m2_sympres_ordering(&p).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{mono:?}");
            }
        }
    }

    #[test]
    fn fused_image_matches_the_two_step_composition() {
        // The single double-sum image must agree with literally composing
        // the undeformed coordinate read-off and the deformed expansions.
        let target = descriptor(true);
        for degree in 0..=4u32 {
            for mono in crate::ncalg::monomials_of_degree(4, degree) {
                let direct = sympres_monomial(&target, mono, ORDER).unwrap();
                let w = mono_weights(&mono);
                let coords = m2_monomial_coords(mono, false, ORDER).unwrap();
                let mut pipeline = NCPoly::zero(&target, ORDER);
                for (j, c) in &coords {
                    let part = m2_irred_expand(*j, w.n1, w.n2, w.n, true, ORDER).unwrap();
                    pipeline = &pipeline + &part.scale(c);
                }
                assert_eq!(direct, pipeline, "{mono:?}");
            }
        }
    }

    #[test]
    fn product_decomposition_holds_for_small_spins() {
        for (tj1, tj2) in [(1, 1), (2, 1), (1, 0)] {
            let report = m2_product_formula_check(half(tj1), half(tj2), 5).unwrap();
            assert!(
                report.passed(),
                "spins ({}, {}): {:?}",
                report.j1,
                report.j2,
                report.failures
            );
            let states = ((tj1 + 1) * (tj1 + 1) * (tj2 + 1) * (tj2 + 1)) as usize;
            assert_eq!(report.cases, states);
        }
    }

    #[test]
    fn invalid_indices_are_rejected() {
        assert!(m2_irred_basis(half(1), half(3), half(1), true, 4).is_err());
        assert!(m2_irred_basis(half(-1), half(0), half(0), true, 4).is_err());
        assert!(m2_irred_expand(half(2), half(0), half(0), half(1), true, 4).is_err());
        assert!(m2_irred_expand(half(2), half(0), half(0), half(3), true, 4).is_err());
    }
}
