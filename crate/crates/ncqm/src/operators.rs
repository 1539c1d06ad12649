//! Coordinate and momentum operators on the deformed Hilbert space, the
//! star-product inner product, and the commutator / self-adjointness
//! diagnostics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::CRat;
use crate::poisson::{gauge_tensor_b, is_admissible, Bivector, Measure};
use crate::starprod::{BidiffOperator, ThetaGradedField, ThetaGradedValue, MAX_GRADE};
use crate::symfield::ScalarField;

/// A wavefunction in the exact ring, with an optional label.
#[derive(Clone, PartialEq, Debug)]
pub struct StateFunction {
    pub psi: ScalarField,
    pub label: Option<String>,
}

impl StateFunction {
    pub fn new(psi: ScalarField) -> Self {
        StateFunction { psi, label: None }
    }

    pub fn labeled(psi: ScalarField, label: impl Into<String>) -> Self {
        StateFunction { psi, label: Some(label.into()) }
    }
}

/// One term of a differential operator: multiplication by `coeff` after
/// the listed partial derivatives.
#[derive(Clone, Debug)]
pub struct DiffTerm {
    pub coeff: ScalarField,
    pub derivs: Vec<usize>,
}

/// A theta-graded differential operator, truncated at grade 2.
#[derive(Clone, Debug)]
pub struct OperatorExpansion {
    dim: usize,
    pub grades: BTreeMap<usize, Vec<DiffTerm>>,
}

impl OperatorExpansion {
    pub fn new(dim: usize) -> Self {
        OperatorExpansion { dim, grades: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push(&mut self, grade: usize, coeff: ScalarField, mut derivs: Vec<usize>) {
        if grade > MAX_GRADE || coeff.is_zero() {
            return;
        }
        derivs.sort_unstable();
        self.grades.entry(grade).or_default().push(DiffTerm { coeff, derivs });
    }

    /// Applies the operator to a field, producing a graded result.
    pub fn apply(&self, psi: &ScalarField) -> Result<ThetaGradedField> {
        if psi.dim() != self.dim {
            return Err(Error::DimMismatch(psi.dim(), self.dim));
        }
        let mut out = ThetaGradedField::zero(self.dim);
        for (&g, terms) in &self.grades {
            for t in terms {
                let d = psi.partial_multi(&t.derivs);
                if d.is_zero() {
                    continue;
                }
                out.grades[g] = out.grades[g].add(&t.coeff.mul(&d)?)?;
            }
        }
        Ok(out)
    }

    /// Operator composition self . other with theta-truncation at grade 2.
    /// Derivatives passing over the inner coefficient expand by Leibniz.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let mut out = OperatorExpansion::new(self.dim);
        for (&a, terms1) in &self.grades {
            for (&b, terms2) in &other.grades {
                if a + b > MAX_GRADE {
                    continue;
                }
                for t1 in terms1 {
                    for t2 in terms2 {
                        // distribute the multiset A = t1.derivs over
                        // (derivatives of t2.coeff) x (derivatives passing through)
                        let a_len = t1.derivs.len();
                        for mask in 0u32..(1 << a_len) {
                            let mut on_coeff = Vec::new();
                            let mut pass = Vec::new();
                            for (bit, &ax) in t1.derivs.iter().enumerate() {
                                if mask & (1 << bit) != 0 {
                                    on_coeff.push(ax);
                                } else {
                                    pass.push(ax);
                                }
                            }
                            let inner = t2.coeff.partial_multi(&on_coeff);
                            if inner.is_zero() {
                                continue;
                            }
                            let coeff = t1.coeff.mul(&inner)?;
                            let mut derivs = pass;
                            derivs.extend_from_slice(&t2.derivs);
                            out.push(a + b, coeff, derivs);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// [self, other] with theta-truncation at grade 2, applied to psi.
    pub fn commutator_apply(&self, other: &Self, psi: &ScalarField) -> Result<ThetaGradedField> {
        let ab = self.compose(other)?.apply(psi)?;
        let ba = other.compose(self)?.apply(psi)?;
        ab.sub(&ba)
    }
}

/// The coordinate operator x-hat^i as an explicit graded expansion:
/// x^i + (i/2) w^{ij} d_j + (1/12) w^{kj} d_j w^{il} d_k d_l - 2 b^{ik} d_k.
///
/// The second-order double-derivative coefficient comes from expanding the
/// star product on a linear first argument; acting on any ring state it
/// reproduces x^i *' psi grade by grade.
pub fn xhat(axis: usize, w: &Bivector, m: &Measure) -> Result<OperatorExpansion> {
    let n = w.dim();
    if axis >= n {
        return Err(Error::AxisOutOfRange(axis, n));
    }
    let b = gauge_tensor_b(m, w)?;
    let mut op = OperatorExpansion::new(n);
    op.push(0, ScalarField::coord(n, axis), vec![]);
    let half_i = CRat::i().mul(&CRat::from_ratio(1, 2));
    for j in 0..n {
        op.push(1, w.entry(axis, j).scale(&half_i), vec![j]);
    }
    let twelfth = CRat::from_ratio(1, 12);
    for k in 0..n {
        for l in 0..n {
            let mut acc = ScalarField::zero(n);
            for j in 0..n {
                acc = acc.add(&w.entry(k, j).mul(&w.entry(axis, l).partial(j))?)?;
            }
            op.push(2, acc.scale(&twelfth), vec![k, l]);
        }
    }
    let m2 = CRat::from_int(-2);
    for k in 0..n {
        op.push(2, b[axis][k].scale(&m2), vec![k]);
    }
    Ok(op)
}

/// The momentum operator p-hat_i = -i d_i - (i/2) d_i ln(mu).
pub fn phat(axis: usize, m: &Measure) -> Result<OperatorExpansion> {
    let n = m.dim();
    if axis >= n {
        return Err(Error::AxisOutOfRange(axis, n));
    }
    let mut op = OperatorExpansion::new(n);
    let mi = CRat::i().neg();
    op.push(0, ScalarField::constant(n, mi.clone()), vec![axis]);
    let half = CRat::from_ratio(1, 2);
    op.push(0, m.log_derivative(axis).scale(&mi.mul(&half)), vec![]);
    Ok(op)
}

/// L_k psi with L_k = -i eps_{kab} x_a d_b.
pub fn angular_momentum(component: usize, psi: &ScalarField) -> ScalarField {
    let n = psi.dim();
    assert_eq!(n, 3);
    let (a, b) = match component {
        0 => (1, 2),
        1 => (2, 0),
        2 => (0, 1),
        _ => panic!("component out of range"),
    };
    let mi = CRat::i().neg();
    let t1 = ScalarField::coord(n, a).mul(&psi.partial(b)).unwrap();
    let t2 = ScalarField::coord(n, b).mul(&psi.partial(a)).unwrap();
    t1.sub(&t2).unwrap().scale(&mi)
}

/// L^2 psi = (L_x^2 + L_y^2 + L_z^2) psi.
pub fn angular_momentum_sq(psi: &ScalarField) -> ScalarField {
    let mut out = ScalarField::zero(psi.dim());
    for k in 0..3 {
        out = out.add(&angular_momentum(k, &angular_momentum(k, psi))).unwrap();
    }
    out
}

/// <phi|psi> = Tr(conj(phi) *' psi), per theta-grade.
pub fn inner_product(
    phi: &StateFunction,
    psi: &StateFunction,
    op: &BidiffOperator,
    m: &Measure,
) -> Result<ThetaGradedValue> {
    inner_product_graded(
        &ThetaGradedField::from_grade0(phi.psi.clone()),
        &ThetaGradedField::from_grade0(psi.psi.clone()),
        op,
        m,
    )
}

/// Inner product of graded fields; the first argument is conjugated.
pub fn inner_product_graded(
    phi: &ThetaGradedField,
    psi: &ThetaGradedField,
    op: &BidiffOperator,
    m: &Measure,
) -> Result<ThetaGradedValue> {
    let mut out = ThetaGradedValue::zero();
    for a in 0..=MAX_GRADE {
        if phi.grades[a].is_zero() {
            continue;
        }
        for b in 0..=MAX_GRADE - a {
            if psi.grades[b].is_zero() {
                continue;
            }
            let star = op.apply(&phi.grades[a].conj(), &psi.grades[b])?;
            for c in 0..=MAX_GRADE - a - b {
                let v = crate::starprod::trace(&star.grades[c], m)?;
                out.grades[a + b + c] = out.grades[a + b + c].add(&v);
            }
        }
    }
    Ok(out)
}

/// <Op phi | psi> - <phi | Op psi>, per grade.
pub fn adjointness_defect(
    op: &OperatorExpansion,
    phi: &StateFunction,
    psi: &StateFunction,
    star: &BidiffOperator,
    m: &Measure,
) -> Result<ThetaGradedValue> {
    let op_phi = op.apply(&phi.psi)?;
    let op_psi = op.apply(&psi.psi)?;
    let lhs = inner_product_graded(
        &op_phi,
        &ThetaGradedField::from_grade0(psi.psi.clone()),
        star,
        m,
    )?;
    let rhs = inner_product_graded(
        &ThetaGradedField::from_grade0(phi.psi.clone()),
        &op_psi,
        star,
        m,
    )?;
    let mut out = ThetaGradedValue::zero();
    for k in 0..=MAX_GRADE {
        out.grades[k] = lhs.grades[k].sub(&rhs.grades[k]);
    }
    Ok(out)
}

/// (x-hat^i x-hat^j - x-hat^j x-hat^i) psi, per grade.
pub fn commutator_xx(
    i: usize,
    j: usize,
    w: &Bivector,
    m: &Measure,
    psi: &StateFunction,
) -> Result<ThetaGradedField> {
    if !is_admissible(m, w) {
        return Err(Error::NonAdmissibleMeasure("measure divergence nonzero".into()));
    }
    let xi = xhat(i, w, m)?;
    let xj = xhat(j, w, m)?;
    xi.commutator_apply(&xj, &psi.psi)
}

/// (x-hat^i p-hat_j - p-hat_j x-hat^i) psi, per grade.
pub fn commutator_xp(
    i: usize,
    j: usize,
    w: &Bivector,
    m: &Measure,
    psi: &StateFunction,
) -> Result<ThetaGradedField> {
    if !is_admissible(m, w) {
        return Err(Error::NonAdmissibleMeasure("measure divergence nonzero".into()));
    }
    let xi = xhat(i, w, m)?;
    let pj = phat(j, m)?;
    xi.commutator_apply(&pj, &psi.psi)
}
