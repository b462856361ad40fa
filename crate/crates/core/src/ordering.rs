//! Ordering prescriptions: degree-preserving linear isomorphisms between a
//! commutative polynomial space and its deformed counterpart.
//!
//! Three prescriptions are provided.  *Normal* ordering sends a commutative
//! monomial to the identically sorted word.  *Symmetric* ordering averages
//! over all distinct arrangements of the letters.  The *symmetry-preserving*
//! prescription rescales irreducible components so that the deformed
//! symmetry acts on them with the undeformed matrices; on the plane it is
//! diagonal on monomials, on the 2x2 matrix algebra it mixes monomials of a
//! common weight pair.
//!
//! Every prescription preserves total degree and is the identity modulo h,
//! so its inverse is computed degree by degree with an h-adic fixed-point
//! iteration that terminates exactly at the truncation order.  Forward and
//! inverse actions are cached as sparse matrices over the graded monomial
//! bases; [`OrderingMap`] owns those caches.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num::rational::Ratio;

use crate::error::{Error, Result};
use crate::ncalg::{monomials_of_degree, AlgebraDescriptor, AlgebraKind, Mono, NCPoly};
use crate::qarith::{binom_rational, qbinom, HalfInt};
use crate::scalar::{HSeries, RadicalScalar, Rational};

mod m2;

pub use m2::{
    m2_irred_basis, m2_irred_expand, m2_monomial_coords, m2_product_formula_check,
    m2_sympres_ordering, ProductFormulaReport,
};

/// The three ordering prescriptions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderingKind {
    /// Monomial goes to the identically sorted word.
    Normal,
    /// Monomial goes to the average of all distinct letter arrangements.
    Symmetric,
    /// Irreducible components are identified, so that the deformed symmetry
    /// acts on ordered polynomials with the undeformed matrices.
    SymPres,
}

impl OrderingKind {
    pub const ALL: [OrderingKind; 3] = [
        OrderingKind::Normal,
        OrderingKind::Symmetric,
        OrderingKind::SymPres,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderingKind::Normal => "normal",
            OrderingKind::Symmetric => "symmetric",
            OrderingKind::SymPres => "sympres",
        }
    }
}

impl FromStr for OrderingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normal" => Ok(OrderingKind::Normal),
            "symmetric" => Ok(OrderingKind::Symmetric),
            "sympres" => Ok(OrderingKind::SymPres),
            _ => Err(Error::DomainError(format!(
                "unknown ordering `{s}` (expected normal, symmetric or sympres)"
            ))),
        }
    }
}

impl std::fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The spin-j weight basis of the plane: a rescaled monomial
/// `x^{j-m} y^{j+m}` whose family transforms irreducibly under the
/// (deformed or undeformed) symmetry.  The scale is the square root of the
/// (q-)binomial `C(2j, j+m)`.
pub fn plane_irred_basis(j: HalfInt, m: HalfInt, deformed: bool, order: usize) -> Result<NCPoly> {
    check_weight_pair(j, m)?;
    let xexp = (j - m).as_int() as u16;
    let yexp = (j + m).as_int() as u16;
    let coeff = if deformed {
        qbinom(j.twice(), (j + m).as_int(), order)?.sqrt()?
    } else {
        let b = binom_rational(j.twice(), (j + m).as_int())?;
        HSeries::constant(RadicalScalar::sqrt_rational(&b)?, order)
    };
    let kind = if deformed {
        AlgebraKind::Plane
    } else {
        AlgebraKind::PlaneClassical
    };
    let alg = AlgebraDescriptor::new(kind);
    Ok(NCPoly::monomial(
        &alg,
        Mono::from_exponents(&[xexp, yexp]),
        coeff,
        order,
    ))
}

fn check_weight_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.is_negative() || m.abs() > j || !(j - m).is_integer() {
        return Err(Error::DomainError(format!(
            "invalid weight pair (j, m) = ({j}, {m})"
        )));
    }
    Ok(())
}

/// Applies the given prescription to a commutative plane polynomial.
///
/// Convenience wrapper; to amortize matrix construction across many calls,
/// hold an [`OrderingMap`] instead.
pub fn plane_ordering(kind: OrderingKind, p: &NCPoly) -> Result<NCPoly> {
    OrderingMap::new(kind, AlgebraKind::Plane, p.order()).apply(p)
}

/// A sparse matrix of truncated series over the degree-`degree` monomial
/// basis, representing one graded component of an ordering prescription.
///
/// Column `c` holds the image of the `c`-th basis monomial; rows are indexed
/// by the same basis.  The basis is the output of [`monomials_of_degree`].
#[derive(Clone, Debug)]
pub struct GradedMatrix {
    degree: u32,
    order: usize,
    kind: AlgebraKind,
    basis: Vec<Mono>,
    cols: Vec<Vec<(usize, HSeries)>>,
}

impl GradedMatrix {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    /// The entry at (row, col), zero if not stored.
    pub fn entry(&self, row: usize, col: usize) -> HSeries {
        for (r, c) in &self.cols[col] {
            if *r == row {
                return c.clone();
            }
        }
        HSeries::constant(RadicalScalar::default(), self.order)
    }

    /// Matrix-vector product in basis coordinates.
    fn matvec(&self, x: &[HSeries]) -> Vec<HSeries> {
        let zero = HSeries::constant(RadicalScalar::default(), self.order);
        let mut y = vec![zero; self.dim()];
        for (col, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (row, e) in &self.cols[col] {
                y[*row] = &y[*row] + &(e * xc);
            }
        }
        y
    }

    /// Whether the matrix is the identity when truncated to order h^0.
    pub fn is_identity_mod_h(&self) -> bool {
        for (col, entries) in self.cols.iter().enumerate() {
            for (row, e) in entries {
                let c0 = e.coeff(0);
                let expect = if *row == col {
                    RadicalScalar::one()
                } else {
                    RadicalScalar::default()
                };
                if *c0 != expect {
                    return false;
                }
            }
        }
        true
    }

    /// JSON form: basis labels plus a sparse entry list
    /// `[row, col, series]` with series per the scalar coefficient schema.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let basis: Vec<serde_json::Value> = self
            .basis
            .iter()
            .map(|m| {
                serde_json::json!({
                    "exponents": m.0[..self.kind.gen_count()].to_vec(),
                    "label": m.render(self.kind),
                })
            })
            .collect();
        let mut entries = Vec::new();
        for (col, col_entries) in self.cols.iter().enumerate() {
            for (row, e) in col_entries {
                entries.push(serde_json::json!([row, col, e.to_json()?]));
            }
        }
        Ok(serde_json::json!({
            "degree": self.degree,
            "dim": self.dim(),
            "order": self.order,
            "basis": basis,
            "entries": entries,
        }))
    }
}

/// An ordering prescription between a commutative polynomial algebra and
/// its deformed counterpart, with per-degree matrix caches for the forward
/// and inverse directions.
pub struct OrderingMap {
    kind: OrderingKind,
    source: AlgebraDescriptor,
    target: AlgebraDescriptor,
    order: usize,
    fwd: Mutex<HashMap<u32, Arc<GradedMatrix>>>,
    inv: Mutex<HashMap<u32, Arc<GradedMatrix>>>,
}

impl OrderingMap {
    /// A prescription for the algebra family of `algebra` (either the
    /// deformed or the commutative member may be named), truncated at
    /// `order` coefficients.
    pub fn new(kind: OrderingKind, algebra: AlgebraKind, order: usize) -> Self {
        Self {
            kind,
            source: AlgebraDescriptor::new(algebra.classical()),
            target: AlgebraDescriptor::new(algebra.deformed()),
            order,
            fwd: Mutex::new(HashMap::new()),
            inv: Mutex::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn source(&self) -> &AlgebraDescriptor {
        &self.source
    }

    pub fn target(&self) -> &AlgebraDescriptor {
        &self.target
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The matrix of the prescription on the degree-`degree` component.
    pub fn forward_matrix(&self, degree: u32) -> Result<Arc<GradedMatrix>> {
        if degree > self.source.max_degree {
            return Err(Error::DegreeOverflow {
                degree,
                cap: self.source.max_degree,
            });
        }
        if let Some(m) = self.fwd.lock().unwrap().get(&degree) {
            return Ok(m.clone());
        }
        let built = Arc::new(self.build_forward(degree)?);
        self.fwd.lock().unwrap().insert(degree, built.clone());
        Ok(built)
    }

    /// The matrix of the inverse prescription on the degree-`degree`
    /// component, obtained from the forward matrix by h-adic iteration.
    pub fn inverse_matrix(&self, degree: u32) -> Result<Arc<GradedMatrix>> {
        if let Some(m) = self.inv.lock().unwrap().get(&degree) {
            return Ok(m.clone());
        }
        let fwd = self.forward_matrix(degree)?;
        let built = Arc::new(invert_graded(&fwd));
        self.inv.lock().unwrap().insert(degree, built.clone());
        Ok(built)
    }

    /// Applies the prescription to a commutative polynomial.
    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly> {
        self.apply_with(p, self.source.kind, self.target.kind, Self::forward_matrix)
    }

    /// Applies the inverse prescription to a deformed polynomial.
    pub fn apply_inv(&self, p: &NCPoly) -> Result<NCPoly> {
        self.apply_with(p, self.target.kind, self.source.kind, Self::inverse_matrix)
    }

    fn apply_with(
        &self,
        p: &NCPoly,
        expect: AlgebraKind,
        out_kind: AlgebraKind,
        matrix: fn(&Self, u32) -> Result<Arc<GradedMatrix>>,
    ) -> Result<NCPoly> {
        if p.kind() != expect {
            return Err(Error::AlgebraMismatch(p.kind().name(), expect.name()));
        }
        let order = self.order.min(p.order());
        let alg = AlgebraDescriptor::with_max_degree(out_kind, self.source.max_degree);
        let mut out = NCPoly::zero(&alg, order);
        for (mono, coeff) in p.terms() {
            let mat = matrix(self, mono.degree())?;
            let col = mat
                .basis
                .iter()
                .position(|b| b == mono)
                .expect("graded basis contains every monomial of its degree");
            for (row, e) in &mat.cols[col] {
                out.add_term(mat.basis[*row], e * coeff);
            }
        }
        Ok(out)
    }

    /// JSON dump of one graded component: both directions plus metadata.
    pub fn to_json(&self, degree: u32) -> Result<serde_json::Value> {
        Ok(serde_json::json!({
            "ordering": self.kind.name(),
            "algebra": self.target.kind.name(),
            "degree": degree,
            "order": self.order,
            "forward": self.forward_matrix(degree)?.to_json()?,
            "inverse": self.inverse_matrix(degree)?.to_json()?,
        }))
    }

    fn build_forward(&self, degree: u32) -> Result<GradedMatrix> {
        let basis = monomials_of_degree(self.target.kind.gen_count(), degree);
        let index: HashMap<Mono, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut builder = ForwardBuilder::new(self.kind, &self.target, self.order);
        let mut cols = Vec::with_capacity(basis.len());
        for mono in &basis {
            let image = builder.image(mono)?;
            let mut col = Vec::with_capacity(image.num_terms());
            for (m, c) in image.terms() {
                debug_assert_eq!(m.degree(), degree, "ordering must preserve degree");
                col.push((index[m], c.clone()));
            }
            cols.push(col);
        }
        Ok(GradedMatrix {
            degree,
            order: self.order,
            kind: self.target.kind,
            basis,
            cols,
        })
    }
}

/// Inverts `I + N` with `N` of positive h-order: iterate
/// `x <- e - (F - I) x`, which converges exactly within `order` steps.
fn invert_graded(fwd: &GradedMatrix) -> GradedMatrix {
    let dim = fwd.dim();
    let zero = HSeries::constant(RadicalScalar::default(), fwd.order);
    let mut cols = Vec::with_capacity(dim);
    for c in 0..dim {
        let mut e = vec![zero.clone(); dim];
        e[c] = HSeries::one(fwd.order);
        let mut x = e.clone();
        for _ in 0..fwd.order {
            let fx = fwd.matvec(&x);
            // x <- e + x - F x
            for r in 0..dim {
                x[r] = &(&e[r] + &x[r]) - &fx[r];
            }
        }
        let col: Vec<(usize, HSeries)> = x
            .into_iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .collect();
        cols.push(col);
    }
    GradedMatrix {
        degree: fwd.degree,
        order: fwd.order,
        kind: fwd.kind,
        basis: fwd.basis.clone(),
        cols,
    }
}

/// Computes images of basis monomials under one prescription, sharing the
/// arrangement cache used by symmetric ordering across calls.
struct ForwardBuilder<'a> {
    kind: OrderingKind,
    target: &'a AlgebraDescriptor,
    order: usize,
    arrangements: HashMap<Mono, NCPoly>,
}

impl<'a> ForwardBuilder<'a> {
    fn new(kind: OrderingKind, target: &'a AlgebraDescriptor, order: usize) -> Self {
        Self {
            kind,
            target,
            order,
            arrangements: HashMap::new(),
        }
    }

    fn image(&mut self, mono: &Mono) -> Result<NCPoly> {
        match self.kind {
            OrderingKind::Normal => Ok(NCPoly::monomial(
                self.target,
                *mono,
                HSeries::one(self.order),
                self.order,
            )),
            OrderingKind::Symmetric => self.symmetric(mono),
            OrderingKind::SymPres => match self.target.kind {
                AlgebraKind::Plane | AlgebraKind::PlaneClassical => {
                    let scale = plane_sympres_coeff(
                        mono.exponent(0) as i64,
                        mono.exponent(1) as i64,
                        self.order,
                    )?;
                    Ok(NCPoly::monomial(self.target, *mono, scale, self.order))
                }
                AlgebraKind::M2 | AlgebraKind::M2Classical => {
                    m2::sympres_monomial(self.target, *mono, self.order)
                }
            },
        }
    }

    /// Average of all distinct arrangements of the letters of `mono`: the
    /// arrangement sum divided by the multinomial count.
    fn symmetric(&mut self, mono: &Mono) -> Result<NCPoly> {
        let sum = self.arrangement_sum(mono)?;
        let mut scale = Rational::from_integer(1.into());
        let mut remaining = mono.degree() as u64;
        for g in 0..self.target.kind.gen_count() {
            for i in 1..=mono.exponent(g) as u64 {
                // multiply by i / remaining, accumulating k_1!...k_r!/n!
                scale *= Ratio::new(i.into(), remaining.into());
                remaining -= 1;
            }
        }
        Ok(sum.scale(&HSeries::from_rational(scale, self.order)))
    }

    /// Sum over every distinct word with the letter content of `mono`,
    /// reduced to normal form: peel one leading letter at a time.
    fn arrangement_sum(&mut self, mono: &Mono) -> Result<NCPoly> {
        if mono.degree() == 0 {
            return Ok(NCPoly::one(self.target, self.order));
        }
        if let Some(p) = self.arrangements.get(mono) {
            return Ok(p.clone());
        }
        let mut sum = NCPoly::zero(self.target, self.order);
        for g in 0..self.target.kind.gen_count() {
            if mono.exponent(g) == 0 {
                continue;
            }
            let mut rest = *mono;
            rest.0[g] -= 1;
            let tail = self.arrangement_sum(&rest)?;
            let head = NCPoly::generator(self.target, g, self.order)?;
            sum = &sum + &head.mul(&tail)?;
        }
        self.arrangements.insert(*mono, sum.clone());
        Ok(sum)
    }
}

/// Diagonal coefficient of the symmetry-preserving plane prescription on
/// `x^k y^l`: the square root of the ratio of the deformed to the
/// undeformed binomial `C(k+l, k)`.
fn plane_sympres_coeff(k: i64, l: i64, order: usize) -> Result<HSeries> {
    let qb = qbinom(k + l, k, order)?;
    let b = binom_rational(k + l, k)?;
    qb.scale_rational(&b.recip()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::parse_poly;
    use crate::qarith::{hexp_int, qnum_int, HalfInt};
    use crate::rep::{coproduct_action, irrep_deformed, CopySide, SlGen};

    fn half(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    const ORDER: usize = 6;

    #[test]
    fn plane_weight_basis_matches_small_cases() {
        let alg = AlgebraDescriptor::new(AlgebraKind::Plane);
        // Spin 1/2: the generators themselves.
        let x = NCPoly::generator(&alg, 0, ORDER).unwrap();
        let y = NCPoly::generator(&alg, 1, ORDER).unwrap();
        assert_eq!(
            plane_irred_basis(half(1), half(-1), true, ORDER).unwrap(),
            x
        );
        assert_eq!(plane_irred_basis(half(1), half(1), true, ORDER).unwrap(), y);
        // Spin 1, weight 0: sqrt(1 + e^{-2h}) x y.
        let t10 = plane_irred_basis(half(2), half(0), true, ORDER).unwrap();
        let scale = (&HSeries::one(ORDER) + &hexp_int(-2, ORDER))
            .sqrt()
            .unwrap();
        let xy = parse_poly(&AlgebraDescriptor::new(AlgebraKind::Plane), "x*y", ORDER).unwrap();
        assert_eq!(t10, xy.scale(&scale));
        // Undeformed spin 1, weight 0: sqrt(2) x y.
        let t10c = plane_irred_basis(half(2), half(0), false, ORDER).unwrap();
        let c = t10c.coeff(&Mono::from_exponents(&[1, 1]));
        assert_eq!(c, HSeries::constant(RadicalScalar::sqrt_int(2), ORDER));
        // Out-of-range weights are rejected.
        assert!(plane_irred_basis(half(1), half(3), true, ORDER).is_err());
        assert!(plane_irred_basis(half(2), half(1), true, ORDER).is_err());
    }

    #[test]
    fn plane_weight_basis_transforms_irreducibly() {
        // Acting on the rescaled monomials reproduces the deformed
        // representation matrices column by column.
        for twice_j in 1..=4 {
            let j = half(twice_j);
            let dim = (twice_j + 1) as usize;
            let bases: Vec<NCPoly> = (0..dim)
                .map(|i| plane_irred_basis(j, half(-twice_j + 2 * i as i64), true, ORDER).unwrap())
                .collect();
            for gen in SlGen::ALL {
                let mat = irrep_deformed(j, gen, ORDER);
                for (col, basis) in bases.iter().enumerate() {
                    let acted = coproduct_action(gen, CopySide::Left, basis).unwrap();
                    let mut expect = NCPoly::zero(basis.algebra(), ORDER);
                    for (row, other) in bases.iter().enumerate() {
                        expect = &expect + &other.scale(mat.entry(row, col));
                    }
                    assert_eq!(acted, expect, "j = {j}, gen = {gen:?}, col = {col}");
                }
            }
        }
    }

    #[test]
    fn ordering_examples_on_the_plane() {
        let alg = AlgebraDescriptor::new(AlgebraKind::PlaneClassical);
        let xy = parse_poly(&alg, "x*y", ORDER).unwrap();

        let normal = plane_ordering(OrderingKind::Normal, &xy).unwrap();
        assert_eq!(normal.to_string(), "x*y");

        // Average of the two arrangements: (x y + y x)/2 = (1 + e^{-h})/2 x y.
        let symmetric = plane_ordering(OrderingKind::Symmetric, &xy).unwrap();
        let mut scale = &HSeries::one(ORDER) + &hexp_int(-1, ORDER);
        scale = scale.scale_rational(&Rational::new(1.into(), 2.into()));
        assert_eq!(symmetric.coeff(&Mono::from_exponents(&[1, 1])), scale);

        // Symmetry-preserving: sqrt((1 + e^{-2h})/2) x y.
        let sympres = plane_ordering(OrderingKind::SymPres, &xy).unwrap();
        let mut q = &HSeries::one(ORDER) + &hexp_int(-2, ORDER);
        q = q.scale_rational(&Rational::new(1.into(), 2.into()));
        assert_eq!(
            sympres.coeff(&Mono::from_exponents(&[1, 1])),
            q.sqrt().unwrap()
        );

        // Monomial powers of a single letter are fixed by all prescriptions.
        let x3 = parse_poly(&alg, "x^3", ORDER).unwrap();
        for kind in OrderingKind::ALL {
            let img = plane_ordering(kind, &x3).unwrap();
            assert_eq!(
                img.coeff(&Mono::from_exponents(&[3, 0])),
                HSeries::one(ORDER)
            );
            assert_eq!(img.num_terms(), 1);
        }
    }

    #[test]
    fn forward_matrices_are_identity_mod_h() {
        for algebra in [AlgebraKind::Plane, AlgebraKind::M2] {
            for kind in OrderingKind::ALL {
                let map = OrderingMap::new(kind, algebra, 4);
                let max = if algebra == AlgebraKind::M2 { 4 } else { 6 };
                for degree in 0..=max {
                    let m = map.forward_matrix(degree).unwrap();
                    assert!(
                        m.is_identity_mod_h(),
                        "{} on {} at degree {degree}",
                        kind.name(),
                        algebra.name()
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity_per_degree() {
        for algebra in [AlgebraKind::Plane, AlgebraKind::M2] {
            for kind in OrderingKind::ALL {
                let map = OrderingMap::new(kind, algebra, 5);
                let max = if algebra == AlgebraKind::M2 { 4 } else { 6 };
                for degree in 1..=max {
                    let fwd = map.forward_matrix(degree).unwrap();
                    let inv = map.inverse_matrix(degree).unwrap();
                    let dim = fwd.dim();
                    for c in 0..dim {
                        let mut e = vec![HSeries::constant(RadicalScalar::default(), 5); dim];
                        e[c] = HSeries::one(5);
                        let x = fwd.matvec(&inv.matvec(&e));
                        for (r, xr) in x.iter().enumerate() {
                            if r == c {
                                assert!(xr.is_one(), "{kind:?} {algebra:?} deg {degree}");
                            } else {
                                assert!(xr.is_zero(), "{kind:?} {algebra:?} deg {degree}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn round_trips_random_polynomials() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0e0e);
        for algebra in [AlgebraKind::Plane, AlgebraKind::M2] {
            let source = AlgebraDescriptor::new(algebra.classical());
            for kind in OrderingKind::ALL {
                let map = OrderingMap::new(kind, algebra, 5);
                for _ in 0..10 {
                    let mut p = NCPoly::zero(&source, 5);
                    for _ in 0..4 {
                        let degree = rng.gen_range(0..=4u32);
                        let monos = monomials_of_degree(algebra.gen_count(), degree);
                        let mono = monos[rng.gen_range(0..monos.len())];
                        let c = rng.gen_range(-4i64..=4);
                        p.add_term(mono, HSeries::from_int(c, 5));
                    }
                    let round = map.apply_inv(&map.apply(&p).unwrap()).unwrap();
                    assert_eq!(round, p, "{kind:?} on {algebra:?}");
                }
            }
        }
    }

    #[test]
    fn apply_rejects_mismatched_algebras() {
        let map = OrderingMap::new(OrderingKind::Normal, AlgebraKind::Plane, 4);
        let deformed = parse_poly(&AlgebraDescriptor::new(AlgebraKind::Plane), "x*y", 4).unwrap();
        // Forward direction expects the commutative algebra.
        assert!(map.apply(&deformed).is_err());
        assert!(map.apply_inv(&deformed).is_ok());
        let classical = parse_poly(
            &AlgebraDescriptor::new(AlgebraKind::PlaneClassical),
            "x*y",
            4,
        )
        .unwrap();
        assert!(map.apply_inv(&classical).is_err());
    }

    #[test]
    fn normal_ordering_inverse_reads_off_rewriting() {
        // phi^{-1} of the rewritten product y x is e^{-h} x y.
        let map = OrderingMap::new(OrderingKind::Normal, AlgebraKind::Plane, ORDER);
        let yx = parse_poly(&AlgebraDescriptor::new(AlgebraKind::Plane), "y*x", ORDER).unwrap();
        let back = map.apply_inv(&yx).unwrap();
        assert_eq!(
            back.coeff(&Mono::from_exponents(&[1, 1])),
            hexp_int(-1, ORDER)
        );
    }

    #[test]
    fn graded_matrix_json_has_expected_shape() {
        let map = OrderingMap::new(OrderingKind::SymPres, AlgebraKind::Plane, 3);
        let v = map.to_json(2).unwrap();
        assert_eq!(v["degree"], 2);
        assert_eq!(v["ordering"], "sympres");
        assert_eq!(v["forward"]["dim"], 3);
        let entries = v["forward"]["entries"].as_array().unwrap();
        // Diagonal prescription: one entry per basis monomial.
        assert_eq!(entries.len(), 3);
        let labels: Vec<&str> = v["forward"]["basis"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| b["label"].as_str().unwrap())
            .collect();
        assert_eq!(labels, ["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn deformed_weight_basis_norm_reduces_classically() {
        // The deformed scale reduces to the undeformed one at h = 0 and its
        // square is the q-binomial: spot-check with [2] at j = 1.
        let t = plane_irred_basis(half(2), half(0), true, 3).unwrap();
        let c = t.coeff(&Mono::from_exponents(&[1, 1]));
        let sq = &c * &c;
        let expect = &qnum_int(2, 3) * &hexp_int(-1, 3);
        assert_eq!(sq, expect);
    }
}
