//! Symmetry action on the polynomial algebras.
//!
//! Each algebra carries an sl2 action (two commuting copies for the matrix
//! algebra) under which the generators form spin-1/2 doublets:
//!
//! * plane: `(x, y)` with `E x = e^{h/2} y`, `F y = e^{-h/2} x`;
//! * matrix algebra, left copy: doublets `(a, c)` and `(b, d)`;
//! * matrix algebra, right copy: doublets `(a, b)` and `(c, d)`.
//!
//! The action extends to products through the deformed Leibniz rule
//!
//! ```text
//! E (p q) = (E p) (e^{h H} q) + p (E q)
//! F (p q) = (F p) q + (e^{-h H} p) (F q)
//! H (p q) = (H p) q + p (H q)
//! ```
//!
//! where `e^{h H}` multiplies a weight-`w` monomial by `e^{h w}`. On the
//! classical algebras the twists disappear and the generators act as the
//! familiar polynomial derivations. The rule is applied letter by letter to
//! each monomial and the images are rewritten to normal form, so the action
//! is well defined on the algebra (the tests check this against rewriting).

use super::{CopySide, SlGen};
use crate::error::{Error, Result};
use crate::ncalg::{normal_form, AlgebraKind, NCPoly};
use crate::qarith::hexp;
use crate::qarith::HalfInt;
use crate::scalar::HSeries;

/// Doublet data for one generator under one sl2 copy: its weight (twice the
/// spin projection, so always +-1) and its ladder images.
struct GenData {
    weight: i64,
    raise_to: Option<u8>,
    lower_to: Option<u8>,
}

fn gen_data(kind: AlgebraKind, side: CopySide, g: u8) -> Result<GenData> {
    let plane = matches!(kind, AlgebraKind::Plane | AlgebraKind::PlaneClassical);
    if plane && side == CopySide::Right {
        return Err(Error::DomainError(
            "the plane carries a single sl2 copy; use the left action".to_string(),
        ));
    }
    let data = if plane {
        match g {
            0 => GenData {
                weight: -1,
                raise_to: Some(1),
                lower_to: None,
            },
            1 => GenData {
                weight: 1,
                raise_to: None,
                lower_to: Some(0),
            },
            _ => unreachable!("plane generator {g}"),
        }
    } else {
        match (side, g) {
            // left copy: (a, c) and (b, d)
            (CopySide::Left, 0) => GenData {
                weight: -1,
                raise_to: Some(2),
                lower_to: None,
            },
            (CopySide::Left, 1) => GenData {
                weight: -1,
                raise_to: Some(3),
                lower_to: None,
            },
            (CopySide::Left, 2) => GenData {
                weight: 1,
                raise_to: None,
                lower_to: Some(0),
            },
            (CopySide::Left, 3) => GenData {
                weight: 1,
                raise_to: None,
                lower_to: Some(1),
            },
            // right copy: (a, b) and (c, d)
            (CopySide::Right, 0) => GenData {
                weight: -1,
                raise_to: Some(1),
                lower_to: None,
            },
            (CopySide::Right, 1) => GenData {
                weight: 1,
                raise_to: None,
                lower_to: Some(0),
            },
            (CopySide::Right, 2) => GenData {
                weight: -1,
                raise_to: Some(3),
                lower_to: None,
            },
            (CopySide::Right, 3) => GenData {
                weight: 1,
                raise_to: None,
                lower_to: Some(2),
            },
            _ => unreachable!("matrix generator {g}"),
        }
    };
    Ok(data)
}

/// Spin-1/2 ladder coefficients: `e^{+-h/2}` deformed, `1` classical.
fn half_raise(deformed: bool, order: usize) -> HSeries {
    if deformed {
        hexp(HalfInt::from_twice(1), order)
    } else {
        HSeries::one(order)
    }
}

fn half_lower(deformed: bool, order: usize) -> HSeries {
    if deformed {
        hexp(HalfInt::from_twice(-1), order)
    } else {
        HSeries::one(order)
    }
}

/// Letter-by-letter action of a generator on a word, before rewriting:
/// returns the list of (coefficient, image word) contributions.
fn act_word_terms(
    kind: AlgebraKind,
    gen: SlGen,
    side: CopySide,
    word: &[u8],
    order: usize,
) -> Result<Vec<(HSeries, Vec<u8>)>> {
    let deformed = kind.is_deformed();
    let weights: Vec<i64> = word
        .iter()
        .map(|&g| gen_data(kind, side, g).map(|d| d.weight))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    match gen {
        SlGen::H => {
            let total: i64 = weights.iter().sum();
            if total != 0 {
                out.push((HSeries::from_int(total, order), word.to_vec()));
            }
        }
        SlGen::E => {
            for i in 0..word.len() {
                let data = gen_data(kind, side, word[i])?;
                let Some(to) = data.raise_to else { continue };
                let suffix: i64 = weights[i + 1..].iter().sum();
                let mut coeff = half_raise(deformed, order);
                if deformed && suffix != 0 {
                    coeff = &coeff * &hexp(HalfInt::from_int(suffix), order);
                }
                let mut w = word.to_vec();
                w[i] = to;
                out.push((coeff, w));
            }
        }
        SlGen::F => {
            for i in 0..word.len() {
                let data = gen_data(kind, side, word[i])?;
                let Some(to) = data.lower_to else { continue };
                let prefix: i64 = weights[..i].iter().sum();
                let mut coeff = half_lower(deformed, order);
                if deformed && prefix != 0 {
                    coeff = &coeff * &hexp(HalfInt::from_int(-prefix), order);
                }
                let mut w = word.to_vec();
                w[i] = to;
                out.push((coeff, w));
            }
        }
    }
    Ok(out)
}

/// Action of one sl2 generator on a polynomial through the deformed Leibniz
/// rule (`side` selects the copy for the matrix algebra; the plane only has
/// the left copy).
pub fn coproduct_action(gen: SlGen, side: CopySide, p: &NCPoly) -> Result<NCPoly> {
    let alg = *p.algebra();
    let order = p.order();
    let mut out = NCPoly::zero(&alg, order);
    for (mono, c) in p.terms() {
        for (coeff, w) in act_word_terms(alg.kind, gen, side, &mono.word(), order)? {
            let image = normal_form(&alg, &w, order)?;
            out = &out + &image.scale(&(&coeff * c));
        }
    }
    Ok(out)
}

/// Multiply each monomial by `e^{k h w}` where `w` is its weight under the
/// chosen copy (the group-like twist `e^{k h H}`). On the classical algebras
/// the weight twist is trivial.
pub fn weight_twist(p: &NCPoly, side: CopySide, k: i64) -> Result<NCPoly> {
    let alg = *p.algebra();
    let order = p.order();
    if !alg.kind.is_deformed() {
        return Ok(p.clone());
    }
    let mut out = NCPoly::zero(&alg, order);
    for (mono, c) in p.terms() {
        let mut w = 0i64;
        for (g, &e) in mono.0.iter().enumerate().take(alg.kind.gen_count()) {
            if e == 0 {
                continue;
            }
            w += gen_data(alg.kind, side, g as u8)?.weight * e as i64;
        }
        let twisted = if w == 0 {
            c.clone()
        } else {
            c * &hexp(HalfInt::from_int(k * w), order)
        };
        out.add_term(*mono, twisted);
    }
    Ok(out)
}
