//! Deformed and classical sl2 representation data.
//!
//! Finite-dimensional irreducibles are indexed by a spin `j` (a non-negative
//! half-integer); the weight basis `|j,m>` for `m = -j..j` is stored with
//! index `0` corresponding to `m = -j`. The deformed ladder action is
//!
//! ```text
//! E |j,m> = e^{h(m+1)} sqrt([j+m+1][j-m]) |j,m+1>
//! F |j,m> = e^{-h m}   sqrt([j+m][j-m+1]) |j,m-1>
//! H |j,m> = 2m |j,m>
//! ```
//!
//! which satisfies `[H,E] = 2E`, `[H,F] = -2F` and `[E,F] = [H]` (the
//! quantum number of the weight). Setting `h = 0` recovers the classical
//! ladder with `sqrt((j+m+1)(j-m))` and friends.
//!
//! The deformed and classical irreducibles are intertwined by a spectral
//! dressing: the deformed generators, expressed through the classical ones,
//! are `E * f(J, M)` and `F * g(J, M)` for diagonal series-valued functions
//! of the spin and the weight ([`alpha_inv`]). [`SymbolicOperator`] gives
//! those expressions a small term language so they can be written once and
//! evaluated on any irreducible.

use crate::qarith::{hexp, qnum_int, HalfInt};
use crate::scalar::{HSeries, RadicalScalar, Rational};
use std::fmt;
use std::sync::Arc;

mod action;
mod cg;

pub use action::{coproduct_action, weight_twist};
pub use cg::{cg_table, CGTable};

/// The three sl2 generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SlGen {
    E,
    F,
    H,
}

impl SlGen {
    pub const ALL: [SlGen; 3] = [SlGen::E, SlGen::F, SlGen::H];

    pub fn name(self) -> &'static str {
        match self {
            SlGen::E => "E",
            SlGen::F => "F",
            SlGen::H => "H",
        }
    }
}

/// Which of the two commuting sl2 copies acts (only the four-space algebra
/// has a second copy).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CopySide {
    Left,
    Right,
}

/// A square matrix of truncated series in the weight basis of one
/// irreducible (row and column `0` correspond to `m = -j`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepMatrix {
    dim: usize,
    order: usize,
    entries: Vec<Vec<HSeries>>,
}

impl RepMatrix {
    pub fn zeros(dim: usize, order: usize) -> Self {
        Self {
            dim,
            order,
            entries: vec![vec![HSeries::zero(order); dim]; dim],
        }
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut m = Self::zeros(dim, order);
        for i in 0..dim {
            m.entries[i][i] = HSeries::one(order);
        }
        m
    }

    pub fn scalar(dim: usize, c: &HSeries) -> Self {
        let mut m = Self::zeros(dim, c.order());
        for i in 0..dim {
            m.entries[i][i] = c.clone();
        }
        m
    }

    pub fn diagonal(values: Vec<HSeries>, order: usize) -> Self {
        let mut m = Self::zeros(values.len(), order);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i][i] = v.truncate(order);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, row: usize, col: usize) -> &HSeries {
        &self.entries[row][col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, v: HSeries) {
        self.entries[row][col] = v.truncate(self.order);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(HSeries::is_zero)
    }

    pub fn truncate_order(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut m = Self::zeros(self.dim, order);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.entries[r][c] = self.entries[r][c].truncate(order);
            }
        }
        m
    }

    pub fn mul(&self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let order = self.order.min(rhs.order);
        let mut out = RepMatrix::zeros(self.dim, order);
        for r in 0..self.dim {
            for k in 0..self.dim {
                if self.entries[r][k].is_zero() {
                    continue;
                }
                for c in 0..self.dim {
                    if rhs.entries[k][c].is_zero() {
                        continue;
                    }
                    out.entries[r][c] =
                        &out.entries[r][c] + &(&self.entries[r][k] * &rhs.entries[k][c]);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &HSeries) -> RepMatrix {
        let order = self.order.min(c.order());
        let mut out = RepMatrix::zeros(self.dim, order);
        for r in 0..self.dim {
            for c2 in 0..self.dim {
                out.entries[r][c2] = &self.entries[r][c2].truncate(order) * c;
            }
        }
        out
    }

    /// Matrix-vector product (column vector of coefficients).
    pub fn apply_vec(&self, v: &[HSeries]) -> Vec<HSeries> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| {
                let mut acc = HSeries::zero(self.order);
                for c in 0..self.dim {
                    if !self.entries[r][c].is_zero() && !v[c].is_zero() {
                        acc = &acc + &(&self.entries[r][c] * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, rhs: &RepMatrix) -> RepMatrix {
        &self.mul(rhs) - &rhs.mul(self)
    }
}

impl std::ops::Add for &RepMatrix {
    type Output = RepMatrix;
    fn add(self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let order = self.order.min(rhs.order);
        let mut out = RepMatrix::zeros(self.dim, order);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[r][c] = &self.entries[r][c].truncate(order) + &rhs.entries[r][c];
            }
        }
        out
    }
}

impl std::ops::Sub for &RepMatrix {
    type Output = RepMatrix;
    fn sub(self, rhs: &RepMatrix) -> RepMatrix {
        self + &-rhs
    }
}

impl std::ops::Neg for &RepMatrix {
    type Output = RepMatrix;
    fn neg(self) -> RepMatrix {
        let mut out = RepMatrix::zeros(self.dim, self.order);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[r][c] = -&self.entries[r][c];
            }
        }
        out
    }
}

/// Spin-`j` state count, `2j + 1`.
pub fn rep_dim(j: HalfInt) -> usize {
    assert!(!j.is_negative(), "spin must be non-negative");
    (j.twice() + 1) as usize
}

/// The weight at a basis index (index `0` is `m = -j`).
pub fn weight_at(j: HalfInt, index: usize) -> HalfInt {
    -j + index as i64
}

/// Coefficient of `|j,m+1>` in `E |j,m>` (zero at the top of the ladder).
pub(crate) fn raise_coeff(deformed: bool, j: HalfInt, m: HalfInt, order: usize) -> HSeries {
    let p = (j + m).as_int() + 1;
    let q = (j - m).as_int();
    if q <= 0 {
        return HSeries::zero(order);
    }
    if deformed {
        let inner = &qnum_int(p, order) * &qnum_int(q, order);
        &hexp(m + 1, order) * &inner.sqrt().expect("positive leading coefficient")
    } else {
        HSeries::constant(RadicalScalar::sqrt_int((p * q) as u64), order)
    }
}

/// Coefficient of `|j,m-1>` in `F |j,m>` (zero at the bottom of the ladder).
pub(crate) fn lower_coeff(deformed: bool, j: HalfInt, m: HalfInt, order: usize) -> HSeries {
    let p = (j + m).as_int();
    let q = (j - m).as_int() + 1;
    if p <= 0 {
        return HSeries::zero(order);
    }
    if deformed {
        let inner = &qnum_int(p, order) * &qnum_int(q, order);
        &hexp(-m, order) * &inner.sqrt().expect("positive leading coefficient")
    } else {
        HSeries::constant(RadicalScalar::sqrt_int((p * q) as u64), order)
    }
}

fn irrep(deformed: bool, j: HalfInt, gen: SlGen, order: usize) -> RepMatrix {
    let dim = rep_dim(j);
    let mut mat = RepMatrix::zeros(dim, order);
    for i in 0..dim {
        let m = weight_at(j, i);
        match gen {
            SlGen::E => {
                if i + 1 < dim {
                    mat.set_entry(i + 1, i, raise_coeff(deformed, j, m, order));
                }
            }
            SlGen::F => {
                if i > 0 {
                    mat.set_entry(i - 1, i, lower_coeff(deformed, j, m, order));
                }
            }
            SlGen::H => {
                mat.set_entry(i, i, HSeries::from_int(m.twice(), order));
            }
        }
    }
    mat
}

/// The deformed spin-`j` irreducible.
pub fn irrep_deformed(j: HalfInt, gen: SlGen, order: usize) -> RepMatrix {
    irrep(true, j, gen, order)
}

/// The classical spin-`j` irreducible.
pub fn irrep_classical(j: HalfInt, gen: SlGen, order: usize) -> RepMatrix {
    irrep(false, j, gen, order)
}

/// Diagonal series-valued function of the spin and the weight.
pub type SpectralFn = Arc<dyn Fn(HalfInt, HalfInt, usize) -> HSeries + Send + Sync>;

/// A small term language over the classical generators: sums, products,
/// series scalars, the Casimir `C = EF + FE + H^2/2`, and diagonal spectral
/// functions of `(J, M)`. Evaluation instantiates the expression on the
/// classical spin-`j` irreducible.
#[derive(Clone)]
pub enum SymbolicOperator {
    Gen(SlGen),
    /// A series multiple of the identity, truncated to the evaluation order.
    Scalar(HSeries),
    /// A rational multiple of the identity (order-independent).
    RationalConst(Rational),
    /// The Casimir element, `2j(j+1)` on the spin-`j` irreducible.
    Casimir,
    Sum(Vec<SymbolicOperator>),
    Prod(Vec<SymbolicOperator>),
    /// Named diagonal operator `|j,m> -> f(j,m) |j,m>`.
    Spectral(String, SpectralFn),
}

impl SymbolicOperator {
    pub fn constant(r: Rational) -> Self {
        SymbolicOperator::RationalConst(r)
    }

    /// Evaluate on the classical spin-`j` irreducible at the given order.
    pub fn eval(&self, j: HalfInt, order: usize) -> RepMatrix {
        let dim = rep_dim(j);
        match self {
            SymbolicOperator::Gen(g) => irrep_classical(j, *g, order),
            SymbolicOperator::Scalar(c) => RepMatrix::scalar(dim, &c.truncate(order)),
            SymbolicOperator::RationalConst(r) => {
                RepMatrix::scalar(dim, &HSeries::from_rational(r.clone(), order))
            }
            SymbolicOperator::Casimir => {
                let jr = j.as_rational();
                let c = (jr.clone() * (jr + Rational::from_integer(1.into())))
                    * Rational::from_integer(2.into());
                RepMatrix::scalar(dim, &HSeries::from_rational(c, order))
            }
            SymbolicOperator::Sum(parts) => {
                parts.iter().fold(RepMatrix::zeros(dim, order), |acc, p| {
                    &acc + &p.eval(j, order)
                })
            }
            SymbolicOperator::Prod(parts) => parts
                .iter()
                .fold(RepMatrix::identity(dim, order), |acc, p| {
                    acc.mul(&p.eval(j, order))
                }),
            SymbolicOperator::Spectral(_, f) => {
                let values = (0..dim).map(|i| f(j, weight_at(j, i), order)).collect();
                RepMatrix::diagonal(values, order)
            }
        }
    }
}

impl fmt::Debug for SymbolicOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicOperator::Gen(g) => write!(f, "{}", g.name()),
            SymbolicOperator::Scalar(c) => write!(f, "({c})"),
            SymbolicOperator::RationalConst(r) => write!(f, "{r}"),
            SymbolicOperator::Casimir => write!(f, "C"),
            SymbolicOperator::Sum(ps) => {
                write!(f, "(")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p:?}")?;
                }
                write!(f, ")")
            }
            SymbolicOperator::Prod(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{p:?}")?;
                }
                Ok(())
            }
            SymbolicOperator::Spectral(name, _) => write!(f, "{name}"),
        }
    }
}

/// The deformed generators expressed over the classical ones: `H` is
/// unchanged, while `E` and `F` acquire diagonal spectral factors
///
/// ```text
/// E -> E * e^{h(M+1)} sqrt([J+M+1][J-M] / ((J+M+1)(J-M)))
/// F -> F * e^{-h M}   sqrt([J+M][J-M+1] / ((J+M)(J-M+1)))
/// ```
///
/// The ratios have removable singularities at the ladder ends (where the
/// classical matrix entry vanishes anyway); they are evaluated as `1` there.
/// Evaluating the result on the classical spin-`j` irreducible reproduces
/// the deformed irreducible exactly, at every order.
pub fn alpha_inv(gen: SlGen) -> SymbolicOperator {
    match gen {
        SlGen::H => SymbolicOperator::Gen(SlGen::H),
        SlGen::E => SymbolicOperator::Prod(vec![
            SymbolicOperator::Gen(SlGen::E),
            SymbolicOperator::Spectral(
                "e^{h(M+1)} sqrt([J+M+1][J-M]/((J+M+1)(J-M)))".to_string(),
                Arc::new(|j, m, order| {
                    let p = (j + m).as_int() + 1;
                    let q = (j - m).as_int();
                    let exp = hexp(m + 1, order);
                    if q <= 0 {
                        return exp;
                    }
                    let ratio = (&qnum_int(p, order) * &qnum_int(q, order))
                        .scale_rational(&Rational::new(1.into(), (p * q).into()));
                    &exp * &ratio.sqrt().expect("leading coefficient 1")
                }),
            ),
        ]),
        SlGen::F => SymbolicOperator::Prod(vec![
            SymbolicOperator::Gen(SlGen::F),
            SymbolicOperator::Spectral(
                "e^{-hM} sqrt([J+M][J-M+1]/((J+M)(J-M+1)))".to_string(),
                Arc::new(|j, m, order| {
                    let p = (j + m).as_int();
                    let q = (j - m).as_int() + 1;
                    let exp = hexp(-m, order);
                    if p <= 0 {
                        return exp;
                    }
                    let ratio = (&qnum_int(p, order) * &qnum_int(q, order))
                        .scale_rational(&Rational::new(1.into(), (p * q).into()));
                    &exp * &ratio.sqrt().expect("leading coefficient 1")
                }),
            ),
        ]),
    }
}
