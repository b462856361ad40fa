//! Named verification suites with machine-readable reports.
//!
//! Each suite runs a family of exact checks — no tolerances, every
//! comparison is between truncated series with rational-radical
//! coefficients — and returns a [`SuiteReport`] listing one [`Check`] per
//! verified statement, with a witness string on failure.  All randomized
//! checks draw from a seeded generator, so reports are reproducible.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ncalg::{monomials_of_degree, AlgebraDescriptor, AlgebraKind, NCPoly};
use crate::ordering::{m2_product_formula_check, OrderingKind, OrderingMap};
use crate::qarith::HalfInt;
use crate::rep::{
    alpha_inv, cg_table, irrep_deformed, CopySide, RepMatrix, SlGen, SymbolicOperator,
};
use crate::scalar::{HSeries, RadicalScalar, Rational};
use crate::star::{classical_action, invariance_report, star, transferred_action};

/// Parameters shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Truncation order for every series computation.
    pub order: usize,
    /// Degree (or twice-spin) bound for the swept families.
    pub max_degree: u32,
    /// Seed for the randomized checks.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            order: 8,
            max_degree: 4,
            seed: 0,
        }
    }
}

/// One verified statement.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Failure witness (or informational counterexample on checks whose
    /// point is that a counterexample exists).
    pub witness: Option<String>,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    fn fail(name: impl Into<String>, witness: String) -> Self {
        Self {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        }
    }

    fn from_outcome(name: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "name": self.name,
            "status": if self.passed { "pass" } else { "fail" },
        });
        if let Some(w) = &self.witness {
            v["witness"] = serde_json::Value::String(w.clone());
        }
        v
    }
}

/// The outcome of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The named suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    /// Deformed irreducibles against the spectral realization over the
    /// undeformed generators.
    Requal,
    /// Symmetry transfer on the plane: exact for the symmetry-preserving
    /// prescription, counterexample under normal ordering.
    RigidityPlane,
    /// Symmetry transfer on the matrix algebra.
    RigidityM2,
    /// Coupling-coefficient orthonormality, completeness, and undeformed
    /// limit.
    Cg,
    /// Product decomposition of weight-basis elements on the matrix
    /// algebra.
    ProductFormula,
    /// Star-product laws, ordering round trips, and the quadratic
    /// invariant comparison.
    Invariants,
    /// Everything above.
    All,
}

impl Suite {
    pub const NAMED: [Suite; 6] = [
        Suite::Requal,
        Suite::RigidityPlane,
        Suite::RigidityM2,
        Suite::Cg,
        Suite::ProductFormula,
        Suite::Invariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Requal => "requal",
            Suite::RigidityPlane => "rigidity-plane",
            Suite::RigidityM2 => "rigidity-m2",
            Suite::Cg => "cg",
            Suite::ProductFormula => "product-formula",
            Suite::Invariants => "invariants",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "requal" => Ok(Suite::Requal),
            "rigidity-plane" => Ok(Suite::RigidityPlane),
            "rigidity-m2" => Ok(Suite::RigidityM2),
            "cg" => Ok(Suite::Cg),
            "product-formula" => Ok(Suite::ProductFormula),
            "invariants" => Ok(Suite::Invariants),
            "all" => Ok(Suite::All),
            other => Err(Error::DomainError(format!(
                "unknown suite {other:?}; expected one of requal, rigidity-plane, \
                 rigidity-m2, cg, product-formula, invariants, all"
            ))),
        }
    }
}

/// Runs a suite (or, for [`Suite::All`], every named suite in order).
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    match suite {
        Suite::All => Suite::NAMED.iter().map(|s| run_one(*s, config)).collect(),
        s => Ok(vec![run_one(s, config)?]),
    }
}

fn run_one(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Requal => suite_requal(config),
        Suite::RigidityPlane => suite_rigidity_plane(config),
        Suite::RigidityM2 => suite_rigidity_m2(config),
        Suite::Cg => suite_cg(config),
        Suite::ProductFormula => suite_product_formula(config),
        Suite::Invariants => suite_invariants(config),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn matrix_witness(got: &RepMatrix, want: &RepMatrix) -> String {
    for r in 0..got.dim().min(want.dim()) {
        for c in 0..got.dim().min(want.dim()) {
            if got.entry(r, c) != want.entry(r, c) {
                return format!(
                    "entry ({r},{c}): got {}, want {}",
                    got.entry(r, c),
                    want.entry(r, c)
                );
            }
        }
    }
    format!("dimension mismatch: {} vs {}", got.dim(), want.dim())
}

/// The explicit second-order expansion of the spectral form of the raising
/// generator: `E (1 + (h/2)(2 + H) + (h^2/12)(C + (1 + H)(5 + 2H)))`.
fn raising_second_order(order: usize) -> SymbolicOperator {
    use SymbolicOperator as Op;
    let h = HSeries::monomial(1, RadicalScalar::one(), order);
    let h2_over_12 = HSeries::monomial(2, RadicalScalar::rational(1, 12), order);
    let linear = Op::Prod(vec![
        Op::Scalar(h.scale_rational(&Rational::new(1.into(), 2.into()))),
        Op::Sum(vec![
            Op::constant(Rational::from_integer(2.into())),
            Op::Gen(SlGen::H),
        ]),
    ]);
    let quadratic = Op::Prod(vec![
        Op::Scalar(h2_over_12),
        Op::Sum(vec![
            Op::Casimir,
            Op::Prod(vec![
                Op::Sum(vec![
                    Op::constant(Rational::from_integer(1.into())),
                    Op::Gen(SlGen::H),
                ]),
                Op::Sum(vec![
                    Op::constant(Rational::from_integer(5.into())),
                    Op::Prod(vec![
                        Op::constant(Rational::from_integer(2.into())),
                        Op::Gen(SlGen::H),
                    ]),
                ]),
            ]),
        ]),
    ]);
    Op::Prod(vec![
        Op::Gen(SlGen::E),
        Op::Sum(vec![
            Op::constant(Rational::from_integer(1.into())),
            linear,
            quadratic,
        ]),
    ])
}

fn suite_requal(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Requal.name());
    let order = config.order;
    for twice_j in 1..=config.max_degree.max(1) as i64 {
        let j = HalfInt::from_twice(twice_j);
        for gen in SlGen::ALL {
            let got = alpha_inv(gen).eval(j, order);
            let want = irrep_deformed(j, gen, order);
            let name = format!("spectral realization of {} at spin {}", gen.name(), j);
            report.checks.push(if got == want {
                Check::pass(name)
            } else {
                Check::fail(name, matrix_witness(&got, &want))
            });
        }
    }
    // The closed-form expansion through second order.
    for twice_j in [2i64, 3] {
        let j = HalfInt::from_twice(twice_j);
        let got = alpha_inv(SlGen::E).eval(j, 3);
        let want = raising_second_order(3).eval(j, 3);
        let name = format!("second-order expansion of the raising generator at spin {j}");
        report.checks.push(if got == want {
            Check::pass(name)
        } else {
            Check::fail(name, matrix_witness(&got, &want))
        });
    }
    Ok(report)
}

fn side_label(side: CopySide) -> &'static str {
    match side {
        CopySide::Left => "left",
        CopySide::Right => "right",
    }
}

fn transfer_sweep(
    report: &mut SuiteReport,
    map: &OrderingMap,
    sides: &[CopySide],
    config: &VerifyConfig,
) -> Result<()> {
    let gen_count = map.source().kind.gen_count();
    for side in sides {
        for gen in SlGen::ALL {
            for degree in 0..=config.max_degree {
                let mut failure = None;
                for mono in monomials_of_degree(gen_count, degree) {
                    let p = NCPoly::monomial(
                        map.source(),
                        mono,
                        HSeries::one(config.order),
                        config.order,
                    );
                    let got = transferred_action(map, gen, *side, &p)?;
                    let want = classical_action(gen, *side, &p)?;
                    if got != want {
                        failure = Some(format!(
                            "on {p}: transferred action {got}, derivation action {want}"
                        ));
                        break;
                    }
                }
                let name = if sides.len() > 1 {
                    format!(
                        "transfer matches derivation: {} {} at degree {degree}",
                        side_label(*side),
                        gen.name()
                    )
                } else {
                    format!(
                        "transfer matches derivation: {} at degree {degree}",
                        gen.name()
                    )
                };
                report.checks.push(Check::from_outcome(name, failure));
            }
        }
    }
    Ok(())
}

fn suite_rigidity_plane(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::RigidityPlane.name());
    let map = OrderingMap::new(OrderingKind::SymPres, AlgebraKind::Plane, config.order);
    transfer_sweep(&mut report, &map, &[CopySide::Left], config)?;

    // Normal ordering already fails at degree two: the raising generator
    // on x*y picks up a first-order correction.
    let normal = OrderingMap::new(OrderingKind::Normal, AlgebraKind::Plane, config.order);
    let xy = NCPoly::monomial(
        normal.source(),
        crate::ncalg::Mono::from_exponents(&[1, 1]),
        HSeries::one(config.order),
        config.order,
    );
    let got = transferred_action(&normal, SlGen::E, CopySide::Left, &xy)?;
    let want = classical_action(SlGen::E, CopySide::Left, &xy)?;
    let diff = &got - &want;
    let name = "normal ordering breaks the transfer at degree two";
    let witness =
        format!("raising generator on {xy}: transferred action {got}, derivation action {want}");
    report.checks.push(Check {
        name: name.to_string(),
        passed: !diff.is_zero() && diff.truncate_order(1).is_zero(),
        witness: Some(witness),
    });
    Ok(report)
}

fn suite_rigidity_m2(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::RigidityM2.name());
    let map = OrderingMap::new(OrderingKind::SymPres, AlgebraKind::M2, config.order);
    transfer_sweep(
        &mut report,
        &map,
        &[CopySide::Left, CopySide::Right],
        config,
    )?;
    Ok(report)
}

fn suite_cg(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Cg.name());
    let order = config.order;
    let max = config.max_degree as i64;
    for tj1 in 0..=max {
        for tj2 in 0..=max {
            let (j1, j2) = (HalfInt::from_twice(tj1), HalfInt::from_twice(tj2));
            for deformed in [true, false] {
                let table = cg_table(j1, j2, deformed, order)?;
                let label = if deformed { "deformed" } else { "undeformed" };
                let mut failure = None;

                // Orthonormality between any two rows of equal weight.
                let js = table.js();
                'ortho: for &ja in &js {
                    for &jb in &js {
                        let jm = ja.min(jb);
                        for m in HalfInt::range_inclusive(-jm, jm) {
                            let mut sum = HSeries::zero(order);
                            for m1 in HalfInt::range_inclusive(-j1, j1) {
                                let lhs = table.coeff(ja, m, m1);
                                let rhs = table.coeff(jb, m, m1);
                                sum = &sum + &(&lhs * &rhs);
                            }
                            let expect = if ja == jb {
                                HSeries::one(order)
                            } else {
                                HSeries::zero(order)
                            };
                            if sum != expect {
                                failure =
                                    Some(format!("rows ({ja}, {m}) and ({jb}, {m}) pair to {sum}"));
                                break 'ortho;
                            }
                        }
                    }
                }

                // Completeness over the coupled range.
                if failure.is_none() {
                    'complete: for m in HalfInt::range_inclusive(-(j1 + j2), j1 + j2) {
                        for m1 in HalfInt::range_inclusive(-j1, j1) {
                            let m2 = m - m1;
                            if m2.abs() > j2 {
                                continue;
                            }
                            for m1p in HalfInt::range_inclusive(-j1, j1) {
                                let m2p = m - m1p;
                                if m2p.abs() > j2 {
                                    continue;
                                }
                                let mut sum = HSeries::zero(order);
                                for &j in &js {
                                    let lhs = table.coeff(j, m, m1);
                                    let rhs = table.coeff(j, m, m1p);
                                    sum = &sum + &(&lhs * &rhs);
                                }
                                let expect = if m1 == m1p {
                                    HSeries::one(order)
                                } else {
                                    HSeries::zero(order)
                                };
                                if sum != expect {
                                    failure = Some(format!(
                                        "columns m1={m1}, m1'={m1p} at weight {m} pair to {sum}"
                                    ));
                                    break 'complete;
                                }
                            }
                        }
                    }
                }

                report.checks.push(Check::from_outcome(
                    format!("couplings {j1} x {j2} ({label}) orthonormal and complete"),
                    failure,
                ));
            }

            // At order one the deformed couplings reduce to the undeformed
            // ones.
            let deformed = cg_table(j1, j2, true, 1)?;
            let plain = cg_table(j1, j2, false, 1)?;
            let mut failure = None;
            'limit: for &j in &deformed.js() {
                for m in HalfInt::range_inclusive(-j, j) {
                    for m1 in HalfInt::range_inclusive(-j1, j1) {
                        let lhs = deformed.coeff(j, m, m1);
                        let rhs = plain.coeff(j, m, m1);
                        if lhs != rhs {
                            failure = Some(format!(
                                "coupling ({j}, {m}; m1={m1}): deformed {lhs}, undeformed {rhs}"
                            ));
                            break 'limit;
                        }
                    }
                }
            }
            report.checks.push(Check::from_outcome(
                format!("couplings {j1} x {j2} reduce to the undeformed ones at order one"),
                failure,
            ));
        }
    }
    Ok(report)
}

fn suite_product_formula(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::ProductFormula.name());
    let max = config.max_degree as i64;
    for tj1 in 0..=max {
        for tj2 in 0..=max {
            let (j1, j2) = (HalfInt::from_twice(tj1), HalfInt::from_twice(tj2));
            let outcome = m2_product_formula_check(j1, j2, config.order)?;
            let name = format!(
                "weight-basis products decompose for spins {j1} x {j2} ({} index choices)",
                outcome.cases
            );
            let failure = if outcome.passed() {
                None
            } else {
                Some(outcome.failures.join("; "))
            };
            report.checks.push(Check::from_outcome(name, failure));
        }
    }
    Ok(report)
}

fn sample_poly(
    rng: &mut ChaCha8Rng,
    alg: &AlgebraDescriptor,
    max_degree: u32,
    order: usize,
) -> NCPoly {
    let mut p = NCPoly::zero(alg, order);
    for _ in 0..3 {
        let degree = rng.gen_range(0..=max_degree);
        let monos = monomials_of_degree(alg.kind.gen_count(), degree);
        let mono = monos[rng.gen_range(0..monos.len())];
        let c = rng.gen_range(-3i64..=3);
        p.add_term(mono, HSeries::from_int(c, order));
    }
    p
}

fn suite_invariants(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Invariants.name());
    let order = config.order;

    // The worked quadratic-invariant comparison.
    let inv = invariance_report(order)?;
    report.checks.push(Check {
        name: "normal-ordering star combination displays as a*d - e(1)*b*c".into(),
        passed: inv.normal_matches_display,
        witness: (!inv.normal_matches_display)
            .then(|| format!("combination evaluates to {}", inv.normal_combination)),
    });
    report.checks.push(Check {
        name: "normal-ordering star combination is not the undeformed invariant".into(),
        passed: !inv.normal_invariant,
        witness: Some(format!(
            "combination evaluates to {}",
            inv.normal_combination
        )),
    });
    report.checks.push(Check {
        name: "symmetry-preserving pullback of the central element is a*d - b*c".into(),
        passed: inv.sympres_matches,
        witness: (!inv.sympres_matches)
            .then(|| format!("pullback evaluates to {}", inv.sympres_pullback)),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for algebra in [AlgebraKind::Plane, AlgebraKind::M2] {
        let classical = AlgebraDescriptor::new(algebra.classical());
        for kind in OrderingKind::ALL {
            let map = OrderingMap::new(kind, algebra, order);

            // Orderings are bijective on each graded piece.
            let mut failure = None;
            for degree in 0..=config.max_degree {
                for mono in monomials_of_degree(algebra.gen_count(), degree) {
                    let p = NCPoly::monomial(&classical, mono, HSeries::one(order), order);
                    let back = map.apply_inv(&map.apply(&p)?)?;
                    if back != p {
                        failure = Some(format!("{p} round-trips to {back}"));
                        break;
                    }
                }
            }
            report.checks.push(Check::from_outcome(
                format!(
                    "{} ordering round-trips on {} monomials",
                    kind.name(),
                    algebra.name()
                ),
                failure,
            ));

            // Unit, associativity, and the deformation property on seeded
            // triples.
            let one = NCPoly::one(&classical, order);
            let mut unit_failure = None;
            let mut assoc_failure = None;
            let mut deform_failure = None;
            for _ in 0..100 {
                let p = sample_poly(&mut rng, &classical, config.max_degree, order);
                let q = sample_poly(&mut rng, &classical, config.max_degree, order);
                let r = sample_poly(&mut rng, &classical, config.max_degree, order);
                if unit_failure.is_none() {
                    let left = star(&map, &one, &p)?;
                    let right = star(&map, &p, &one)?;
                    if left != p || right != p {
                        unit_failure = Some(format!("1 * ({p}) = {left}; ({p}) * 1 = {right}"));
                    }
                }
                let pq = star(&map, &p, &q)?;
                if assoc_failure.is_none() {
                    let qr = star(&map, &q, &r)?;
                    let left = star(&map, &pq, &r)?;
                    let right = star(&map, &p, &qr)?;
                    if left != right {
                        assoc_failure = Some(format!(
                            "(p*q)*r = {left}, p*(q*r) = {right} for p = {p}, q = {q}, r = {r}"
                        ));
                    }
                }
                if deform_failure.is_none() {
                    let pointwise = p.mul(&q)?;
                    if pq.truncate_order(1) != pointwise.truncate_order(1) {
                        deform_failure = Some(format!(
                            "p*q = {pq} does not reduce to {pointwise} for p = {p}, q = {q}"
                        ));
                    }
                }
            }
            let tag = format!("{} star product on the {}", kind.name(), algebra.name());
            report.checks.push(Check::from_outcome(
                format!("{tag} has a unit"),
                unit_failure,
            ));
            report.checks.push(Check::from_outcome(
                format!("{tag} is associative on 100 seeded triples"),
                assoc_failure,
            ));
            report.checks.push(Check::from_outcome(
                format!("{tag} deforms the pointwise product"),
                deform_failure,
            ));
        }

        // Changing the prescription is a star-algebra isomorphism.
        let with = OrderingMap::new(OrderingKind::SymPres, algebra, order);
        let other = OrderingMap::new(OrderingKind::Normal, algebra, order);
        let mut failure = None;
        for _ in 0..3 {
            let p = sample_poly(&mut rng, &classical, config.max_degree.min(2), order);
            let q = sample_poly(&mut rng, &classical, config.max_degree.min(2), order);
            let psi = |r: &NCPoly| -> Result<NCPoly> { with.apply_inv(&other.apply(r)?) };
            let lhs = psi(&star(&other, &p, &q)?)?;
            let rhs = star(&with, &psi(&p)?, &psi(&q)?)?;
            if lhs != rhs {
                failure = Some(format!(
                    "psi(p * q) = {lhs}, psi(p) * psi(q) = {rhs} for p = {p}, q = {q}"
                ));
                break;
            }
        }
        report.checks.push(Check::from_outcome(
            format!(
                "changing prescription is a star isomorphism on the {}",
                algebra.name()
            ),
            failure,
        ));
    }

    // Transferred actions obey the undeformed commutation relations even
    // when they differ from the derivation action.
    for (algebra, kind) in [
        (AlgebraKind::Plane, OrderingKind::Normal),
        (AlgebraKind::Plane, OrderingKind::Symmetric),
        (AlgebraKind::M2, OrderingKind::SymPres),
    ] {
        let classical = AlgebraDescriptor::new(algebra.classical());
        let map = OrderingMap::new(kind, algebra, order);
        let sides: &[CopySide] = match algebra {
            AlgebraKind::M2 => &[CopySide::Left, CopySide::Right],
            _ => &[CopySide::Left],
        };
        let mut failure = None;
        'relations: for side in sides {
            for _ in 0..2 {
                let p = sample_poly(&mut rng, &classical, config.max_degree.min(3), order);
                let act = |g: SlGen, q: &NCPoly| transferred_action(&map, g, *side, q);
                let ef = act(SlGen::E, &act(SlGen::F, &p)?)?;
                let fe = act(SlGen::F, &act(SlGen::E, &p)?)?;
                let h = act(SlGen::H, &p)?;
                if &ef - &fe != h {
                    failure = Some(format!(
                        "[E, F] acting on {p} gives {}, H gives {h}",
                        &ef - &fe
                    ));
                    break 'relations;
                }
                let he = act(SlGen::H, &act(SlGen::E, &p)?)?;
                let eh = act(SlGen::E, &h)?;
                let e2 = act(SlGen::E, &p)?.scale(&HSeries::from_int(2, order));
                if &he - &eh != e2 {
                    failure = Some(format!(
                        "[H, E] acting on {p} gives {}, 2E gives {e2}",
                        &he - &eh
                    ));
                    break 'relations;
                }
            }
        }
        report.checks.push(Check::from_outcome(
            format!(
                "transferred {} action on the {} obeys the undeformed relations",
                kind.name(),
                algebra.name()
            ),
            failure,
        ));
    }

    Ok(report)
}
