//! Antisymmetric bivector fields, the Jacobi identity, trace-measure
//! admissibility, and the second-order gauge-correction tensor.

use crate::error::{Error, Result};
use crate::exact::CRat;
use crate::symfield::ScalarField;

use num::{Signed, Zero};

/// Antisymmetric matrix of fields housing omega^{ij}(x).
#[derive(Clone, PartialEq, Debug)]
pub struct Bivector {
    dim: usize,
    entries: Vec<Vec<ScalarField>>,
}

impl Bivector {
    /// Builds from the strictly-upper-triangular entries; the rest is
    /// filled in by antisymmetry.
    pub fn from_upper(dim: usize, upper: &[(usize, usize, ScalarField)]) -> Result<Self> {
        let mut entries = vec![vec![ScalarField::zero(dim); dim]; dim];
        for (i, j, f) in upper {
            if *i >= dim || *j >= dim || i == j {
                return Err(Error::AxisOutOfRange(*i.max(j), dim));
            }
            if f.dim() != dim {
                return Err(Error::DimMismatch(f.dim(), dim));
            }
            entries[*i][*j] = f.clone();
            entries[*j][*i] = f.neg();
        }
        Ok(Bivector { dim, entries })
    }

    /// The rotationally invariant choice omega^{ij} = eps^{ijk} x_k (r^2)^(s/2).
    pub fn rotational(s: i64) -> Self {
        let dim = 3;
        let f = ScalarField::radial_power(dim, s);
        let mk = |axis: usize| ScalarField::coord(dim, axis).mul(&f).unwrap();
        Bivector::from_upper(
            dim,
            &[(0, 1, mk(2)), (1, 2, mk(0)), (2, 0, mk(1))],
        )
        .unwrap()
    }

    /// Constant bivector with given upper-triangular rational values.
    pub fn constant(dim: usize, upper: &[(usize, usize, CRat)]) -> Result<Self> {
        let fields: Vec<(usize, usize, ScalarField)> = upper
            .iter()
            .map(|(i, j, c)| (*i, *j, ScalarField::constant(dim, c.clone())))
            .collect();
        Bivector::from_upper(dim, &fields)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarField {
        &self.entries[i][j]
    }
}

/// Integration measure mu(x), a single strictly positive ring term.
#[derive(Clone, PartialEq, Debug)]
pub struct Measure {
    mu: ScalarField,
}

impl Measure {
    pub fn new(mu: ScalarField) -> Result<Self> {
        // restrict to a single radial-type term with positive real
        // coefficient so log-derivatives stay in the ring
        {
            let mut it = mu.terms();
            match (it.next(), it.next()) {
                (Some((key, coeff)), None) => {
                    if key.mono.iter().any(|&a| a != 0)
                        || !coeff.im.is_zero()
                        || !coeff.re.is_positive()
                    {
                        return Err(Error::UnsupportedMeasure);
                    }
                }
                _ => return Err(Error::UnsupportedMeasure),
            }
        }
        Ok(Measure { mu })
    }

    pub fn unit(dim: usize) -> Self {
        Measure::new(ScalarField::one(dim)).unwrap()
    }

    pub fn field(&self) -> &ScalarField {
        &self.mu
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }

    /// d_i ln(mu) = (d_i mu)/mu, exact in the ring for radial-type terms.
    pub fn log_derivative(&self, axis: usize) -> ScalarField {
        let (key, _) = self.mu.terms().next().expect("measure is nonzero");
        let dim = self.mu.dim();
        let mut out = ScalarField::zero(dim);
        if key.rad != 0 {
            // s * x_i * (r^2)^{-1}
            let t = ScalarField::coord(dim, axis)
                .mul(&ScalarField::radial_power(dim, -2))
                .unwrap()
                .scale(&CRat::from_int(key.rad));
            out = out.add(&t).unwrap();
        }
        if !key.gauss.is_zero() {
            let t = ScalarField::coord(dim, axis)
                .scale(&CRat::from_rat(-(&key.gauss + &key.gauss)));
            out = out.add(&t).unwrap();
        }
        if !key.expo.is_zero() {
            let t = ScalarField::coord(dim, axis)
                .mul(&ScalarField::radial_power(dim, -1))
                .unwrap()
                .scale(&CRat::from_rat(-key.expo.clone()));
            out = out.add(&t).unwrap();
        }
        out
    }
}

/// J^{ijk} = omega^{il} d_l omega^{jk} + cyclic; zero iff omega is Poisson.
pub fn jacobi_residual(w: &Bivector) -> Vec<Vec<Vec<ScalarField>>> {
    let n = w.dim();
    let mut out = vec![vec![vec![ScalarField::zero(n); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = ScalarField::zero(n);
                for l in 0..n {
                    let t1 = w.entry(i, l).mul(&w.entry(j, k).partial(l)).unwrap();
                    let t2 = w.entry(k, l).mul(&w.entry(i, j).partial(l)).unwrap();
                    let t3 = w.entry(j, l).mul(&w.entry(k, i).partial(l)).unwrap();
                    acc = acc.add(&t1).unwrap().add(&t2).unwrap().add(&t3).unwrap();
                }
                out[i][j][k] = acc;
            }
        }
    }
    out
}

/// Component j of d_i(mu omega^{ij}); all zero iff mu is an admissible
/// trace measure for omega.
pub fn measure_divergence(m: &Measure, w: &Bivector) -> Vec<ScalarField> {
    let n = w.dim();
    (0..n)
        .map(|j| {
            let mut acc = ScalarField::zero(n);
            for i in 0..n {
                let prod = m.field().mul(w.entry(i, j)).unwrap();
                acc = acc.add(&prod.partial(i)).unwrap();
            }
            acc
        })
        .collect()
}

pub fn is_admissible(m: &Measure, w: &Bivector) -> bool {
    measure_divergence(m, w).iter().all(ScalarField::is_zero)
}

/// The inner matrix F^{l,ik} = omega^{ij} d_j omega^{lk}.
fn star_correction_core(w: &Bivector, l: usize, i: usize, k: usize) -> ScalarField {
    let n = w.dim();
    let mut acc = ScalarField::zero(n);
    for j in 0..n {
        acc = acc
            .add(&w.entry(i, j).mul(&w.entry(l, k).partial(j)).unwrap())
            .unwrap();
    }
    acc
}

/// b^{ik} = (1/(48 mu)) d_l(mu omega^{ij} d_j omega^{lk}), computed via the
/// log-derivative of mu so Gaussian measures stay in the ring. The 1/48
/// normalization is fixed by requiring the grade-2 trace defect of the
/// gauged product to cancel exactly; see the trace tests.
pub fn gauge_tensor_b(m: &Measure, w: &Bivector) -> Result<Vec<Vec<ScalarField>>> {
    if !is_admissible(m, w) {
        return Err(Error::NonAdmissibleMeasure(
            "measure divergence is nonzero".into(),
        ));
    }
    let n = w.dim();
    let scale = CRat::from_ratio(1, 48);
    let mut out = vec![vec![ScalarField::zero(n); n]; n];
    for i in 0..n {
        for k in 0..n {
            let mut acc = ScalarField::zero(n);
            for l in 0..n {
                let core = star_correction_core(w, l, i, k);
                acc = acc.add(&core.partial(l)).unwrap();
                acc = acc.add(&m.log_derivative(l).mul(&core).unwrap()).unwrap();
            }
            out[i][k] = acc.scale(&scale);
        }
    }
    Ok(out)
}

/// The two sides of the symmetry identity
/// d_l(mu w^{ij} d_j w^{lk}) = d_l(mu w^{kj} d_j w^{li}), as a difference.
pub fn b_symmetry_residual(m: &Measure, w: &Bivector) -> Vec<Vec<ScalarField>> {
    let n = w.dim();
    let side = |i: usize, k: usize| {
        let mut acc = ScalarField::zero(n);
        for l in 0..n {
            let core = m
                .field()
                .mul(&star_correction_core(w, l, i, k))
                .unwrap();
            acc = acc.add(&core.partial(l)).unwrap();
        }
        acc
    };
    let mut out = vec![vec![ScalarField::zero(n); n]; n];
    for i in 0..n {
        for k in 0..n {
            out[i][k] = side(i, k).sub(&side(k, i)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Rat};
    use num::One;

    fn measure_r2() -> Measure {
        Measure::new(ScalarField::radial_power(3, 2)).unwrap()
    }

    fn measure_gauss() -> Measure {
        Measure::new(ScalarField::gaussian(3, Rat::one())).unwrap()
    }

    /// omega^{12}=y, omega^{13}=z, omega^{23}=x: not Poisson.
    fn non_poisson() -> Bivector {
        Bivector::from_upper(
            3,
            &[
                (0, 1, ScalarField::coord(3, 1)),
                (0, 2, ScalarField::coord(3, 2)),
                (1, 2, ScalarField::coord(3, 0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rotational_entries() {
        let w = Bivector::rotational(0);
        assert_eq!(*w.entry(0, 1), ScalarField::coord(3, 2));
        assert_eq!(*w.entry(1, 2), ScalarField::coord(3, 0));
        assert_eq!(*w.entry(2, 0), ScalarField::coord(3, 1));
        assert!(w.entry(0, 0).is_zero());
        assert_eq!(*w.entry(1, 0), ScalarField::coord(3, 2).neg());
    }

    #[test]
    fn rotational_s1_entry() {
        let w = Bivector::rotational(1);
        let expect = ScalarField::coord(3, 2)
            .mul(&ScalarField::radial_power(3, 1))
            .unwrap();
        assert_eq!(*w.entry(0, 1), expect);
    }

    #[test]
    fn jacobi_holds_for_rotational() {
        for s in [0, 1, 2] {
            let res = jacobi_residual(&Bivector::rotational(s));
            for plane in &res {
                for row in plane {
                    for f in row {
                        assert!(f.is_zero(), "jacobi residual nonzero at s={}", s);
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_holds_for_constant() {
        let w = Bivector::constant(
            3,
            &[(0, 1, CRat::from_int(2)), (1, 2, CRat::from_int(-1))],
        )
        .unwrap();
        let res = jacobi_residual(&w);
        assert!(res.iter().flatten().flatten().all(ScalarField::is_zero));
    }

    #[test]
    fn jacobi_counterexample() {
        let res = jacobi_residual(&non_poisson());
        // J^{123} = -2x
        let expect = ScalarField::coord(3, 0).scale(&CRat::from_int(-2));
        assert_eq!(res[0][1][2], expect);
        let v = res[0][1][2].evaluate(&[1.0, 0.0, 0.0]).unwrap();
        assert!((v.re + 2.0).abs() < 1e-14);
    }

    #[test]
    fn measure_divergence_vanishes_for_radial_measures() {
        for (m, w) in [
            (Measure::unit(3), Bivector::rotational(0)),
            (measure_r2(), Bivector::rotational(1)),
            (measure_gauss(), Bivector::rotational(2)),
        ] {
            assert!(is_admissible(&m, &w));
        }
    }

    #[test]
    fn measure_divergence_nonzero_for_x_measure() {
        // mu = x1 is not radial-type for Measure, so exercise the raw
        // divergence with a handmade field via the public function on a
        // permitted measure times the bivector entry mismatch instead:
        // d_i(x1 eps^{ijk} x_k) has a nonzero component.
        let w = Bivector::rotational(0);
        let n = 3;
        let mu = ScalarField::coord(3, 0);
        let mut nonzero = false;
        for j in 0..n {
            let mut acc = ScalarField::zero(n);
            for i in 0..n {
                acc = acc.add(&mu.mul(w.entry(i, j)).unwrap().partial(i)).unwrap();
            }
            if !acc.is_zero() {
                let v = acc.evaluate(&[0.3, 0.7, -0.2]).unwrap();
                assert!(v.norm() > 0.0);
                nonzero = true;
            }
        }
        assert!(nonzero);
    }

    #[test]
    fn gauge_tensor_flat_rotational_is_identity_over_24() {
        let b = gauge_tensor_b(&Measure::unit(3), &Bivector::rotational(0)).unwrap();
        let diag = ScalarField::constant(3, CRat::from_ratio(1, 24));
        for i in 0..3 {
            for k in 0..3 {
                if i == k {
                    assert_eq!(b[i][k], diag);
                } else {
                    assert!(b[i][k].is_zero());
                }
            }
        }
    }

    #[test]
    fn gauge_tensor_constant_bivector_is_zero() {
        let w = Bivector::constant(3, &[(0, 1, CRat::one()), (1, 2, CRat::from_int(3))]).unwrap();
        let b = gauge_tensor_b(&Measure::unit(3), &w).unwrap();
        assert!(b.iter().flatten().all(ScalarField::is_zero));
    }

    #[test]
    fn gauge_tensor_symmetric_for_s1() {
        let b = gauge_tensor_b(&Measure::unit(3), &Bivector::rotational(1)).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                assert_eq!(b[i][k], b[k][i]);
            }
        }
        assert!(!b[0][0].is_zero());
    }

    #[test]
    fn b_symmetry_residual_vanishes_on_battery() {
        let measures = [Measure::unit(3), measure_r2(), measure_gauss()];
        for m in &measures {
            for s in [0, 1, 2] {
                let res = b_symmetry_residual(m, &Bivector::rotational(s));
                assert!(res.iter().flatten().all(ScalarField::is_zero));
            }
        }
    }

    #[test]
    fn b_symmetry_residual_recorded_for_non_poisson() {
        let res = b_symmetry_residual(&Measure::unit(3), &non_poisson());
        // not required to vanish; just confirm the diagnostic is computable
        let any_nonzero = res.iter().flatten().any(|f| !f.is_zero());
        let _ = any_nonzero;
    }

    #[test]
    fn rejects_non_admissible_measure_for_b() {
        // mu = exp(-r) paired with rotational omega is admissible (radial),
        // but a constant bivector with mu = r^2 is not.
        let w = Bivector::constant(3, &[(0, 1, CRat::one())]).unwrap();
        let m = Measure::new(ScalarField::radial_power(3, 2)).unwrap();
        assert!(gauge_tensor_b(&m, &w).is_err());
    }

    #[test]
    fn log_derivative_of_gaussian_measure() {
        let m = measure_gauss();
        let expect = ScalarField::coord(3, 0).scale(&CRat::from_int(-2));
        assert_eq!(m.log_derivative(0), expect);
        let m2 = measure_r2();
        let expect2 = ScalarField::coord(3, 1)
            .mul(&ScalarField::radial_power(3, -2))
            .unwrap()
            .scale(&CRat::from_int(2));
        assert_eq!(m2.log_derivative(1), expect2);
        let _ = rat_int(0);
    }
}
