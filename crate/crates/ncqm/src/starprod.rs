//! The second-order Kontsevich star product as an explicit bidifferential
//! operator, its trace-compatible gauged variant, and the trace and
//! associativity diagnostics.

use crate::error::{Error, Result};
use crate::exact::{CRat, ExactValue};
use crate::poisson::{gauge_tensor_b, Bivector, Measure};
use crate::symfield::ScalarField;

pub const MAX_GRADE: usize = 2;

/// Field with components graded by powers of the deformation parameter,
/// truncated at grade 2.
#[derive(Clone, PartialEq, Debug)]
pub struct ThetaGradedField {
    pub grades: [ScalarField; MAX_GRADE + 1],
}

impl ThetaGradedField {
    pub fn zero(dim: usize) -> Self {
        ThetaGradedField {
            grades: [
                ScalarField::zero(dim),
                ScalarField::zero(dim),
                ScalarField::zero(dim),
            ],
        }
    }

    pub fn from_grade0(f: ScalarField) -> Self {
        let dim = f.dim();
        let mut g = ThetaGradedField::zero(dim);
        g.grades[0] = f;
        g
    }

    pub fn dim(&self) -> usize {
        self.grades[0].dim()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for k in 0..=MAX_GRADE {
            out.grades[k] = out.grades[k].add(&other.grades[k])?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for k in 0..=MAX_GRADE {
            out.grades[k] = out.grades[k].sub(&other.grades[k])?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().all(ScalarField::is_zero)
    }

    pub fn conj(&self) -> Self {
        ThetaGradedField {
            grades: [
                self.grades[0].conj(),
                self.grades[1].conj(),
                self.grades[2].conj(),
            ],
        }
    }
}

/// Exact values graded by powers of the deformation parameter.
#[derive(Clone, PartialEq, Debug)]
pub struct ThetaGradedValue {
    pub grades: [ExactValue; MAX_GRADE + 1],
}

impl ThetaGradedValue {
    pub fn zero() -> Self {
        ThetaGradedValue {
            grades: [ExactValue::zero(), ExactValue::zero(), ExactValue::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().all(ExactValue::is_zero)
    }

    /// Numeric value at a given theta.
    pub fn instantiate(&self, theta: f64) -> num::complex::Complex64 {
        let mut acc = num::complex::Complex64::new(0.0, 0.0);
        for (k, v) in self.grades.iter().enumerate() {
            acc += v.to_c64() * theta.powi(k as i32);
        }
        acc
    }
}

/// One term of a bidifferential operator: at theta-grade `grade`, multiply
/// the `left` derivatives of the first argument and the `right`
/// derivatives of the second by the coefficient field.
#[derive(Clone, Debug)]
pub struct StarTerm {
    pub grade: usize,
    pub coeff: ScalarField,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// A theta-graded bidifferential operator; the star product as data.
#[derive(Clone, Debug)]
pub struct BidiffOperator {
    dim: usize,
    terms: Vec<StarTerm>,
}

impl BidiffOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[StarTerm] {
        &self.terms
    }

    pub fn empty(dim: usize) -> Self {
        BidiffOperator { dim, terms: Vec::new() }
    }

    pub fn push_term(&mut self, t: StarTerm) {
        self.push(t.grade, t.coeff, t.left, t.right);
    }

    fn push(&mut self, grade: usize, coeff: ScalarField, left: Vec<usize>, right: Vec<usize>) {
        if !coeff.is_zero() {
            self.terms.push(StarTerm { grade, coeff, left, right });
        }
    }

    /// Applies the operator to a pair of fields, grade by grade.
    pub fn apply(&self, f: &ScalarField, g: &ScalarField) -> Result<ThetaGradedField> {
        if f.dim() != self.dim || g.dim() != self.dim {
            return Err(Error::DimMismatch(f.dim(), g.dim()));
        }
        let mut out = ThetaGradedField::zero(self.dim);
        for t in &self.terms {
            let lf = f.partial_multi(&t.left);
            if lf.is_zero() {
                continue;
            }
            let rg = g.partial_multi(&t.right);
            if rg.is_zero() {
                continue;
            }
            let contrib = t.coeff.mul(&lf)?.mul(&rg)?;
            out.grades[t.grade] = out.grades[t.grade].add(&contrib)?;
        }
        Ok(out)
    }

    /// Applies the operator to theta-graded arguments, truncating the total
    /// grade at 2.
    pub fn apply_graded(
        &self,
        f: &ThetaGradedField,
        g: &ThetaGradedField,
    ) -> Result<ThetaGradedField> {
        let mut out = ThetaGradedField::zero(self.dim);
        for a in 0..=MAX_GRADE {
            if f.grades[a].is_zero() {
                continue;
            }
            for b in 0..=MAX_GRADE - a {
                if g.grades[b].is_zero() {
                    continue;
                }
                let part = self.apply(&f.grades[a], &g.grades[b])?;
                for k in 0..=MAX_GRADE - a - b {
                    out.grades[a + b + k] = out.grades[a + b + k].add(&part.grades[k])?;
                }
            }
        }
        Ok(out)
    }
}

/// The second-order Kontsevich star product for a Poisson bivector:
/// f*g = fg + (i/2) d_i f w^{ij} d_j g
///       - (1/4)[ (1/2) w^{ij} w^{kl} d_i d_k f d_j d_l g
///              - (1/3) w^{ij} d_j w^{kl} (d_i d_k f d_l g - d_k f d_i d_l g) ]
/// per theta-grade.
pub fn kontsevich_star(w: &Bivector) -> BidiffOperator {
    let n = w.dim();
    let mut op = BidiffOperator { dim: n, terms: Vec::new() };
    // grade 0: pointwise product
    op.push(0, ScalarField::one(n), vec![], vec![]);
    // grade 1: (i/2) w^{ij} d_i (x) d_j
    let half_i = CRat::i().mul(&CRat::from_ratio(1, 2));
    for i in 0..n {
        for j in 0..n {
            op.push(1, w.entry(i, j).scale(&half_i), vec![i], vec![j]);
        }
    }
    // grade 2
    let m_eighth = CRat::from_ratio(-1, 8);
    let twelfth = CRat::from_ratio(1, 12);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let ww = w.entry(i, j).mul(w.entry(k, l)).unwrap();
                    op.push(2, ww.scale(&m_eighth), vec![i, k], vec![j, l]);
                    let wdw = w.entry(i, j).mul(&w.entry(k, l).partial(j)).unwrap();
                    op.push(2, wdw.scale(&twelfth.neg()), vec![i, k], vec![l]);
                    op.push(2, wdw.scale(&twelfth), vec![k], vec![i, l]);
                }
            }
        }
    }
    op
}

/// The gauged product f *' g = f * g - 2 b^{ik} d_i f d_k g at grade 2,
/// which admits the trace for an admissible measure.
pub fn star_prime(w: &Bivector, m: &Measure) -> Result<BidiffOperator> {
    let b = gauge_tensor_b(m, w)?;
    Ok(star_prime_with_b(w, &b))
}

/// Builds the gauged product from an explicit correction tensor. Exposed
/// so tests can inject a deliberately asymmetric b as a negative control.
pub fn star_prime_with_b(w: &Bivector, b: &[Vec<ScalarField>]) -> BidiffOperator {
    let mut op = kontsevich_star(w);
    let m2 = CRat::from_int(-2);
    for (i, row) in b.iter().enumerate() {
        for (k, field) in row.iter().enumerate() {
            op.push(2, field.scale(&m2), vec![i], vec![k]);
        }
    }
    op
}

/// Tr(f) = integral of mu * f over R^3.
pub fn trace(f: &ScalarField, m: &Measure) -> Result<ExactValue> {
    m.field().mul(f)?.integrate_r3()
}

/// Per-grade exact defect Tr(f*g) - Tr(fg).
pub fn trace_defect(
    f: &ScalarField,
    g: &ScalarField,
    op: &BidiffOperator,
    m: &Measure,
) -> Result<ThetaGradedValue> {
    let star = op.apply(f, g)?;
    let plain = f.mul(g)?;
    let mut out = ThetaGradedValue::zero();
    for k in 0..=MAX_GRADE {
        let mut v = trace(&star.grades[k], m)?;
        if k == 0 {
            v = v.sub(&trace(&plain, m)?);
        }
        out.grades[k] = v;
    }
    Ok(out)
}

/// (f *' g) *' h - f *' (g *' h), per grade with truncation at 2.
pub fn associator(
    f: &ScalarField,
    g: &ScalarField,
    h: &ScalarField,
    op: &BidiffOperator,
) -> Result<ThetaGradedField> {
    let fg = op.apply(f, g)?;
    let gh = op.apply(g, h)?;
    let left = op.apply_graded(&fg, &ThetaGradedField::from_grade0(h.clone()))?;
    let right = op.apply_graded(&ThetaGradedField::from_grade0(f.clone()), &gh)?;
    left.sub(&right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Rat};
    use num::One;

    fn x(i: usize) -> ScalarField {
        ScalarField::coord(3, i)
    }

    fn star0() -> BidiffOperator {
        kontsevich_star(&Bivector::rotational(0))
    }

    fn star0_prime() -> BidiffOperator {
        star_prime(&Bivector::rotational(0), &Measure::unit(3)).unwrap()
    }

    #[test]
    fn first_order_term_of_coordinates() {
        // x1 * x2: grade-1 component (i/2) x3
        let res = star0().apply(&x(0), &x(1)).unwrap();
        assert_eq!(res.grades[0], x(0).mul(&x(1)).unwrap());
        let expect = x(2).scale(&CRat::i().mul(&CRat::from_ratio(1, 2)));
        assert_eq!(res.grades[1], expect);
    }

    #[test]
    fn unit_property() {
        let one = ScalarField::one(3);
        let g = x(1)
            .pow(2)
            .mul(&ScalarField::gaussian(3, Rat::one()))
            .unwrap();
        for op in [star0(), star0_prime()] {
            let res = op.apply(&one, &g).unwrap();
            assert_eq!(res.grades[0], g);
            assert!(res.grades[1].is_zero());
            assert!(res.grades[2].is_zero());
            let res = op.apply(&g, &one).unwrap();
            assert_eq!(res.grades[0], g);
            assert!(res.grades[1].is_zero());
            assert!(res.grades[2].is_zero());
        }
    }

    #[test]
    fn diagonal_first_order_vanishes() {
        let res = star0().apply(&x(0), &x(0)).unwrap();
        assert!(res.grades[1].is_zero());
    }

    #[test]
    fn star_prime_grade2_on_linear_arguments() {
        // x1 *' x1: only the -2 b^{11} d f d g term survives: -1/12
        let res = star0_prime().apply(&x(0), &x(0)).unwrap();
        assert_eq!(res.grades[2], ScalarField::constant(3, CRat::from_ratio(-1, 12)));
    }

    #[test]
    fn constant_bivector_has_no_correction() {
        let w = Bivector::constant(3, &[(0, 1, CRat::one())]).unwrap();
        let plain = kontsevich_star(&w);
        let gauged = star_prime(&w, &Measure::unit(3)).unwrap();
        let f = x(0).pow(2);
        let g = x(1).pow(2);
        assert_eq!(plain.apply(&f, &g).unwrap(), gauged.apply(&f, &g).unwrap());
    }

    #[test]
    fn bilinearity_zero_argument() {
        let res = star0().apply(&ScalarField::zero(3), &x(1)).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn grade1_antisymmetry_under_swap() {
        let op = star0_prime();
        let a = op.apply(&x(0), &x(1)).unwrap();
        let b = op.apply(&x(1), &x(0)).unwrap();
        let diff = a.sub(&b).unwrap();
        // theta^1 difference = i x3
        assert_eq!(diff.grades[1], x(2).scale(&CRat::i()));
        assert!(diff.grades[0].is_zero());
        // symmetric b cancels in the antisymmetrization
        assert!(diff.grades[2].is_zero());
    }

    #[test]
    fn trace_of_gaussian() {
        let m = Measure::unit(3);
        let v = trace(&ScalarField::gaussian(3, Rat::one()), &m).unwrap();
        let mut expect = ExactValue::zero();
        expect.push(3, &Rat::one(), CRat::one());
        assert_eq!(v, expect);
        let odd = x(0).mul(&ScalarField::gaussian(3, Rat::one())).unwrap();
        assert!(trace(&odd, &m).unwrap().is_zero());
        // r^2 exp(-r^2): (3/2) pi^(3/2)
        let f = ScalarField::radial_power(3, 2)
            .mul(&ScalarField::gaussian(3, Rat::one()))
            .unwrap();
        let v = trace(&f, &m).unwrap();
        let mut expect = ExactValue::zero();
        expect.push(3, &Rat::one(), CRat::from_ratio(3, 2));
        assert_eq!(v, expect);
    }

    #[test]
    fn trace_defect_vanishes_for_gauged_product() {
        let m = Measure::unit(3);
        let f = x(0).pow(2).mul(&ScalarField::gaussian(3, Rat::one())).unwrap();
        let g = x(1).pow(2).mul(&ScalarField::gaussian(3, Rat::one())).unwrap();
        let d = trace_defect(&f, &g, &star0_prime(), &m).unwrap();
        assert!(d.is_zero());
        // uncorrected star has a nonzero grade-2 defect on the same pair
        let d = trace_defect(&f, &g, &star0(), &m).unwrap();
        assert!(d.grades[0].is_zero());
        assert!(d.grades[1].is_zero());
        assert!(!d.grades[2].is_zero());
    }

    #[test]
    fn grade1_defect_vanishes_for_equal_arguments() {
        let m = Measure::unit(3);
        let f = x(2).mul(&ScalarField::gaussian(3, rat_int(2))).unwrap();
        let d = trace_defect(&f, &f, &star0(), &m).unwrap();
        assert!(d.grades[1].is_zero());
    }

    #[test]
    fn associator_vanishes_for_gauged_product() {
        let op = star0_prime();
        let res = associator(&x(0), &x(1), &x(2), &op).unwrap();
        assert!(res.is_zero());
        let res = associator(&x(0).pow(2), &x(1), &x(2).pow(2), &op).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn associator_with_unit_argument_vanishes() {
        let op = star0_prime();
        let res = associator(&ScalarField::one(3), &x(1).pow(3), &x(2), &op).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn asymmetric_b_breaks_trace_property() {
        // A first-derivative-in-each-slot correction cancels identically in
        // the grade-2 associator, so at this truncation an asymmetric b is
        // caught by the trace property instead.
        let w = Bivector::rotational(0);
        let m = Measure::unit(3);
        let mut b = gauge_tensor_b(&m, &w).unwrap();
        b[0][1] = b[0][1].add(&ScalarField::one(3)).unwrap();
        let op = star_prime_with_b(&w, &b);
        let res = associator(&x(0), &x(1), &x(2), &op).unwrap();
        assert!(res.is_zero());
        let f = x(0).mul(&ScalarField::gaussian(3, rat_int(1))).unwrap();
        let g = x(1).mul(&ScalarField::gaussian(3, rat_int(1))).unwrap();
        let d = trace_defect(&f, &g, &op, &m).unwrap();
        assert!(!d.grades[2].is_zero());
    }

    #[test]
    fn perturbed_grade2_coefficients_break_associativity() {
        // flipping the sign of the omega-d-omega terms destroys exact
        // associativity at grade 2, pinning those coefficients uniquely
        let w = Bivector::rotational(0);
        let mut op = BidiffOperator::empty(3);
        for t in kontsevich_star(&w).terms() {
            let flip = t.grade == 2 && t.left.len() + t.right.len() == 3;
            let coeff = if flip { t.coeff.neg() } else { t.coeff.clone() };
            op.push_term(StarTerm {
                grade: t.grade,
                coeff,
                left: t.left.clone(),
                right: t.right.clone(),
            });
        }
        let f = x(0).pow(2).mul(&ScalarField::gaussian(3, rat_int(1))).unwrap();
        let res = associator(&f, &x(1).mul(&x(2)).unwrap(), &x(2).pow(2), &op).unwrap();
        assert!(!res.grades[2].is_zero());
    }
}
