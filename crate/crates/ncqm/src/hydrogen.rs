//! Hydrogen sector: exact unperturbed states in the symbolic ring, energy
//! shifts induced by the gauged star product, and nonlocality bounds.

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_int, rat_to_f64, CRat, Rat};
use crate::operators::{angular_momentum_sq, commutator_xx, StateFunction};
use crate::poisson::{Bivector, Measure};
use crate::quad::radial_laguerre_adaptive;
use crate::starprod::star_prime;
use crate::symfield::ScalarField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n < 1 || l >= n || m.unsigned_abs() > l {
            return Err(Error::InvalidQuantumNumbers(n, l, m));
        }
        Ok(QuantumNumbers { n, l, m })
    }
}

/// Natural units: m_e = hbar = 1, a0 = 1/e2. `fspec` is the integer s in
/// f = (r^2)^(s/2); `theta` only scales reported numbers, never the exact
/// theta^2 coefficients.
#[derive(Clone, Debug)]
pub struct PhysicalParams {
    pub e2: Rat,
    pub theta: f64,
    pub fspec: i64,
}

impl PhysicalParams {
    pub fn new(e2: Rat, theta: f64, fspec: i64) -> Result<Self> {
        if !e2.is_positive() || theta < 0.0 {
            return Err(Error::InvalidConfig(
                "e2 must be positive and theta nonnegative".into(),
            ));
        }
        Ok(PhysicalParams { e2, theta, fspec })
    }

    pub fn natural(fspec: i64) -> Self {
        PhysicalParams { e2: Rat::one(), theta: 0.0, fspec }
    }

    pub fn a0(&self) -> Rat {
        self.e2.clone().pow(-1)
    }

    /// E_n = -e^2 / (2 a0 n^2)
    pub fn energy(&self, n: u32) -> Rat {
        let n2 = rat_int((n as i64) * (n as i64));
        -self.e2.clone() * self.e2.clone() / (rat_int(2) * n2)
    }
}

fn factorial(n: i64) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= i;
    }
    out
}

/// Coefficients of the generalized Laguerre polynomial L^alpha_k by the
/// three-term recurrence; index = power of the argument.
fn laguerre(k: u32, alpha: i64) -> Vec<Rat> {
    let a = rat_int(alpha);
    let mut prev = vec![Rat::one()];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![Rat::one() + a.clone(), -Rat::one()];
    for j in 2..=k {
        let j_r = rat_int(j as i64);
        // j L_j = (2j - 1 + alpha - x) L_{j-1} - (j - 1 + alpha) L_{j-2}
        let c1 = rat_int(2 * j as i64 - 1) + a.clone();
        let c2 = rat_int(j as i64 - 1) + a.clone();
        let mut next = vec![Rat::zero(); j as usize + 1];
        for (p, c) in cur.iter().enumerate() {
            next[p] += c1.clone() * c;
            next[p + 1] -= c;
        }
        for (p, c) in prev.iter().enumerate() {
            next[p] -= c2.clone() * c;
        }
        for c in next.iter_mut() {
            *c /= j_r.clone();
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of the Legendre polynomial P_l; index = power of t.
fn legendre(l: u32) -> Vec<Rat> {
    let mut prev = vec![Rat::one()];
    if l == 0 {
        return prev;
    }
    let mut cur = vec![Rat::zero(), Rat::one()];
    for j in 2..=l {
        let j_r = rat_int(j as i64);
        let mut next = vec![Rat::zero(); j as usize + 1];
        for (p, c) in cur.iter().enumerate() {
            next[p + 1] += rat_int(2 * j as i64 - 1) * c;
        }
        for (p, c) in prev.iter().enumerate() {
            next[p] -= rat_int(j as i64 - 1) * c;
        }
        for c in next.iter_mut() {
            *c /= j_r.clone();
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Unnormalized solid harmonic r^l P_l^{|m|}(z/r) e^{i m phi} (sin theta)
/// factors realized as (x +/- iy)^{|m|}; a harmonic polynomial, so the
/// state stays inside the exact ring.
pub fn solid_harmonic(l: u32, m: i32) -> ScalarField {
    let am = m.unsigned_abs();
    assert!(am <= l);
    // q = d^{|m|}/dt^{|m|} P_l
    let mut q = legendre(l);
    for _ in 0..am {
        q = q
            .iter()
            .enumerate()
            .skip(1)
            .map(|(p, c)| rat_int(p as i64) * c)
            .collect();
    }
    // (x + i sgn(m) y)^{|m|}, with the Condon-Shortley phase for m > 0
    let x = ScalarField::coord(3, 0);
    let iy = ScalarField::coord(3, 1).scale(&if m >= 0 { CRat::i() } else { CRat::i().neg() });
    let mut equatorial = ScalarField::one(3);
    for _ in 0..am {
        equatorial = equatorial.mul(&x.add(&iy).unwrap()).unwrap();
    }
    if m > 0 && m % 2 == 1 {
        equatorial = equatorial.neg();
    }
    // sum_j q_j z^j r^{l - |m| - j}; nonzero q_j have j = l - |m| (mod 2)
    let z = ScalarField::coord(3, 2);
    let mut polar = ScalarField::zero(3);
    for (j, c) in q.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rem = l as i64 - am as i64 - j as i64;
        debug_assert!(rem >= 0 && rem % 2 == 0);
        let term = z
            .pow(j as u32)
            .mul(&ScalarField::radial_power(3, rem))
            .unwrap()
            .scale(&CRat::from_rat(c.clone()));
        polar = polar.add(&term).unwrap();
    }
    equatorial.mul(&polar).unwrap()
}

/// Radial factor as explicit (power, coefficient) data plus the decay rate,
/// for the float oracle; the symbolic state carries the same content.
#[derive(Clone, Debug)]
pub struct RadialFunction {
    pub terms: Vec<(i64, Rat)>,
    pub gamma: Rat,
}

impl RadialFunction {
    /// (2r/na0)^l L^{2l+1}_{n-l-1}(2r/na0) e^{-r/na0}, unnormalized.
    pub fn new(n: u32, l: u32, p: &PhysicalParams) -> Self {
        let na0 = rat_int(n as i64) * p.a0();
        let scale = rat_int(2) / na0.clone();
        let lag = laguerre(n - l - 1, 2 * l as i64 + 1);
        let mut terms = Vec::new();
        for (j, c) in lag.iter().enumerate() {
            let pow = l as i64 + j as i64;
            let coeff = c.clone() * scale.clone().pow(pow as i32);
            terms.push((pow, coeff));
        }
        RadialFunction { terms, gamma: na0.pow(-1) }
    }

    pub fn eval(&self, r: f64) -> f64 {
        let poly: f64 = self
            .terms
            .iter()
            .map(|(p, c)| rat_to_f64(c) * r.powi(*p as i32))
            .sum();
        poly * (-rat_to_f64(&self.gamma) * r).exp()
    }

    pub fn field(&self) -> ScalarField {
        let mut out = ScalarField::zero(3);
        for (p, c) in &self.terms {
            out = out
                .add(
                    &ScalarField::radial_power(3, *p)
                        .scale(&CRat::from_rat(c.clone())),
                )
                .unwrap();
        }
        out.mul(&ScalarField::exponential(3, self.gamma.clone())).unwrap()
    }
}

/// Unnormalized eigenstate with its exact squared norm. Expectation values
/// are exact ratios, so the irrational overall normalization never enters;
/// the paper's printed normalization constant is still validated exactly by
/// `paper_norm_check`.
#[derive(Clone, Debug)]
pub struct HydrogenState {
    pub q: QuantumNumbers,
    pub radial: RadialFunction,
    pub psi: StateFunction,
    /// integral of |psi|^2, a rational multiple of pi
    pub norm2: Rat,
}

pub fn wavefunction(q: QuantumNumbers, p: &PhysicalParams) -> Result<HydrogenState> {
    let radial = RadialFunction::new(q.n, q.l, p);
    // the radial factor already carries r^l, so divide it back out of the
    // solid harmonic to keep the angular part homogeneous of degree zero
    let angular = solid_harmonic(q.l, q.m)
        .mul(&ScalarField::radial_power(3, -(q.l as i64)))?;
    let field = radial.field().mul(&angular)?;
    let density = field.conj().mul(&field)?;
    // pure exponential envelope: a single rational multiple of pi
    let norm2 = density
        .integrate_r3()?
        .as_rational_pi()
        .ok_or_else(|| Error::Divergent("norm is not a rational multiple of pi".into()))?;
    if !norm2.is_positive() {
        return Err(Error::InvalidQuantumNumbers(q.n, q.l, q.m));
    }
    Ok(HydrogenState {
        q,
        radial,
        psi: StateFunction::labeled(field, format!("psi({},{},{})", q.n, q.l, q.m)),
        norm2,
    })
}

impl HydrogenState {
    /// Exact expectation of a multiplication operator F: <psi|F psi>/<psi|psi>.
    pub fn expectation(&self, f: &ScalarField) -> Result<CRat> {
        let num = self.psi.psi.conj().mul(&self.psi.psi)?.mul(f)?.integrate_r3()?;
        let num = num
            .as_rational_pi()
            .ok_or_else(|| Error::Divergent("expectation is not rational".into()))?;
        Ok(CRat::from_rat(num / self.norm2.clone()))
    }

    /// Exact expectation of an already-applied field Phi: <psi|Phi>/<psi|psi>.
    pub fn overlap(&self, phi: &ScalarField) -> Result<CRat> {
        let num = self.psi.psi.conj().mul(phi)?.integrate_r3()?;
        match num.as_rational_pi() {
            Some(r) => Ok(CRat::from_rat(r / self.norm2.clone())),
            None => {
                // allow an exactly imaginary rational multiple of pi
                let imag = num.scale(&CRat::i().neg()).as_rational_pi().ok_or_else(|| {
                    Error::Divergent("overlap is not a rational multiple of pi".into())
                })?;
                Ok(CRat::i().mul_rat(&(imag / self.norm2.clone())))
            }
        }
    }
}

/// Verifies the paper's normalization constant exactly: N_rad^2 N_ang^2
/// times the exact squared norm of the unnormalized state must be 1.
pub fn paper_norm_check(q: QuantumNumbers, p: &PhysicalParams) -> Result<bool> {
    let st = wavefunction(q, p)?;
    let na0 = rat_int(q.n as i64) * p.a0();
    let n_rad2 = rat_int(8) / (na0.clone() * na0.clone() * na0.clone())
        * Rat::new(
            factorial(q.n as i64 - q.l as i64 - 1),
            BigInt::from(2 * q.n as i64) * factorial(q.n as i64 + q.l as i64),
        );
    let am = q.m.unsigned_abs() as i64;
    // |Y|^2 normalization with the 1/pi kept explicit: N_ang^2 = c_ang / pi
    let c_ang = Rat::new(
        BigInt::from(2 * q.l as i64 + 1) * factorial(q.l as i64 - am),
        BigInt::from(4) * factorial(q.l as i64 + am),
    );
    // norm2 stores integral/pi, so the pi factors cancel exactly
    Ok(n_rad2 * c_ang * st.norm2 == Rat::one())
}

/// Exact <r^k> against |psi_nl|^2; errors on the divergent cases.
pub fn radial_expectation_exact(q: QuantumNumbers, k: i64, p: &PhysicalParams) -> Result<Rat> {
    let st = wavefunction(q, p)?;
    let v = st.expectation(&ScalarField::radial_power(3, k))?;
    v.as_real().ok_or_else(|| Error::Divergent("moment not real".into()))
}

/// Float oracle for <r^k>: adaptive Gauss-Laguerre on the radial density.
pub fn radial_expectation_quadrature(
    q: QuantumNumbers,
    k: i64,
    p: &PhysicalParams,
) -> Result<f64> {
    let radial = RadialFunction::new(q.n, q.l, p);
    let rate = 2.0 * rat_to_f64(&radial.gamma);
    let moment = |kk: i64| {
        radial_laguerre_adaptive(
            &|r: f64| {
                let rr = radial.eval(r);
                rr * rr * r.powi((2 + kk) as i32)
            },
            rate,
            1e-12,
        )
    };
    // integrand r^{2+k} R^2 must be integrable at the origin
    if 2 * q.l as i64 + 2 + k < 0 {
        return Err(Error::Divergent(format!("r^{k} moment diverges for l={}", q.l)));
    }
    Ok(moment(k)? / moment(0)?)
}

/// Exact theta^2 coefficient of the NC level shift,
/// Delta E = -(e^2 l(l+1)/12) <f^2/r^3>; exactly zero for l = 0 since the
/// perturbation carries L^2.
pub fn delta_e_general(q: QuantumNumbers, p: &PhysicalParams) -> Result<Rat> {
    if q.l == 0 {
        return Ok(Rat::zero());
    }
    let ll1 = rat_int(q.l as i64 * (q.l as i64 + 1));
    let moment = radial_expectation_exact(q, 2 * p.fspec - 3, p)?;
    Ok(-p.e2.clone() * ll1 * moment / rat_int(12))
}

/// Closed form for f = 1: Delta E = -(E_n^2/(3 a0 e^2)) n/(l + 1/2).
/// Finite at l = 0 even though the operator result vanishes there; the
/// report layer flags that mismatch instead of hiding it.
pub fn delta_e_closed_f1(q: QuantumNumbers, p: &PhysicalParams) -> Rat {
    let en = p.energy(q.n);
    let en2 = en.clone() * en;
    let n_over = rat_int(2 * q.n as i64) / rat_int(2 * q.l as i64 + 1);
    -en2 * n_over / (rat_int(3) * p.a0() * p.e2.clone())
}

/// Closed form for f = r: Delta E = (1/6) E_n l(l+1).
pub fn delta_e_closed_fr(q: QuantumNumbers, p: &PhysicalParams) -> Rat {
    p.energy(q.n) * rat_int(q.l as i64 * (q.l as i64 + 1)) / rat_int(6)
}

/// The printed <r^2> closed form (n^2 a0^2/4)(4n^2 - l^2 + 2nl + 1),
/// reported for comparison against the oracle, never substituted for it.
pub fn paper_r2_formula(q: QuantumNumbers, p: &PhysicalParams) -> Rat {
    let n = q.n as i64;
    let l = q.l as i64;
    let n2a02 = rat_int(n * n) * p.a0() * p.a0();
    n2a02 * rat_int(4 * n * n - l * l + 2 * n * l + 1) / rat_int(4)
}

/// theta^2-part of V *' psi minus (1/12) V' f^2 l(l+1) psi for a state
/// g(r) x solid harmonic; an exactly zero residual certifies the reduction
/// of the perturbed Hamiltonian to the L^2 form.
pub fn hamiltonian_reduction_residual(
    s: i64,
    l: u32,
    v: &ScalarField,
) -> Result<ScalarField> {
    let psi = solid_harmonic(l, 0)
        .mul(&ScalarField::exponential(3, Rat::one()))?;
    let w = Bivector::rotational(s);
    let m = Measure::unit(3);
    let star = star_prime(&w, &m)?;
    let grade2 = star.apply(v, &psi)?.grades[2].clone();
    let vprime = v.radial_derivative()?;
    let f2 = ScalarField::radial_power(3, 2 * s);
    let expected = vprime
        .mul(&f2)?
        .mul(&psi)?
        .scale(&CRat::from_rat(rat_int(l as i64 * (l as i64 + 1)) / rat_int(12)));
    grade2.sub(&expected)
}

/// Exact theta^2 coefficient of the bound: (1/4)|m| <r^{2s}>.
pub fn uncertainty_bound(q: QuantumNumbers, p: &PhysicalParams) -> Result<Rat> {
    if q.m == 0 {
        return Ok(Rat::zero());
    }
    let moment = radial_expectation_exact(q, 2 * p.fspec, p)?;
    Ok(rat_int(q.m.unsigned_abs() as i64) * moment / rat_int(4))
}

/// The printed bound formula |m| (theta^2 n^2 a0^2/16)(4n^2 - l^2 + 2nl + 1)
/// as a theta^2 coefficient, reported for comparison (s = 1 case).
pub fn paper_bound_formula(q: QuantumNumbers, p: &PhysicalParams) -> Rat {
    rat_int(q.m.unsigned_abs() as i64) * paper_r2_formula(q, p) / rat_int(4)
}

/// Delta x Delta y on psi0 from exact second moments (<x> = 0 by parity).
pub fn uncertainty_product(q: QuantumNumbers, p: &PhysicalParams) -> Result<f64> {
    let st = wavefunction(q, p)?;
    let xx = st
        .expectation(&ScalarField::coord(3, 0).pow(2))?
        .as_real()
        .ok_or_else(|| Error::Divergent("moment not real".into()))?;
    let yy = st
        .expectation(&ScalarField::coord(3, 1).pow(2))?
        .as_real()
        .ok_or_else(|| Error::Divergent("moment not real".into()))?;
    Ok((rat_to_f64(&xx) * rat_to_f64(&yy)).sqrt())
}

/// Per-grade expectation of [x-hat^1, x-hat^2] on psi0; grade 1 vanishes by
/// the angular integration and grade 2 is (i/2) m <f^2> exactly.
pub fn commutator_expectation(
    q: QuantumNumbers,
    p: &PhysicalParams,
) -> Result<[CRat; 3]> {
    let st = wavefunction(q, p)?;
    let w = Bivector::rotational(p.fspec);
    let m = Measure::unit(3);
    let phi = commutator_xx(0, 1, &w, &m, &st.psi)?;
    let mut out = [CRat::zero(), CRat::zero(), CRat::zero()];
    for g in 0..3 {
        if !phi.grades[g].is_zero() {
            out[g] = st.overlap(&phi.grades[g])?;
        }
    }
    Ok(out)
}

/// (-1/2 Laplacian - e^2/r - E_n) psi, exactly zero for true eigenstates.
pub fn schrodinger_residual(q: QuantumNumbers, p: &PhysicalParams) -> Result<ScalarField> {
    let st = wavefunction(q, p)?;
    let kinetic = st.psi.psi.laplacian().scale(&CRat::from_ratio(-1, 2));
    let coulomb = ScalarField::radial_power(3, -1)
        .scale(&CRat::from_rat(-p.e2.clone()))
        .mul(&st.psi.psi)?;
    let energy = st.psi.psi.scale(&CRat::from_rat(p.energy(q.n)));
    kinetic.add(&coulomb)?.sub(&energy)
}

/// L^2 psi - l(l+1) psi, exactly zero by the solid-harmonic construction.
pub fn l2_residual(q: QuantumNumbers, p: &PhysicalParams) -> Result<ScalarField> {
    let st = wavefunction(q, p)?;
    let expect = st.psi.psi.scale(&CRat::from_int(q.l as i64 * (q.l as i64 + 1)));
    angular_momentum_sq(&st.psi.psi).sub(&expect)
}

/// One spectrum/bounds row; exact values stay exact, floats carry theta.
#[derive(Clone, Debug)]
pub struct SpectrumRow {
    pub q: QuantumNumbers,
    pub energy: f64,
    pub delta_e_exact: Rat,
    pub delta_e_numeric: f64,
    pub bound_numeric: f64,
    pub flags: Vec<String>,
}

/// All (n, l, m) rows up to nmax, in quantum-number order; sweeps run
/// data-parallel and merge deterministically.
pub fn spectrum_sweep(nmax: u32, p: &PhysicalParams) -> Result<Vec<SpectrumRow>> {
    let mut qs = Vec::new();
    for n in 1..=nmax {
        for l in 0..n {
            for m in -(l as i32)..=l as i32 {
                qs.push(QuantumNumbers { n, l, m });
            }
        }
    }
    let theta2 = p.theta * p.theta;
    let rows = crate::par::par_map(qs, |q| -> Result<SpectrumRow> {
        let delta = delta_e_general(q, p)?;
        let bound = uncertainty_bound(q, p)?;
        let mut flags = Vec::new();
        if q.l == 0 && p.fspec == 0 {
            let closed = delta_e_closed_f1(q, p);
            flags.push(format!(
                "l0_closed_form:operator=0;closed={closed}"
            ));
        }
        if p.fspec == 1 {
            let oracle = radial_expectation_exact(q, 2, p)?;
            let printed = paper_r2_formula(q, p);
            if oracle != printed {
                flags.push(format!("r2_formula:paper={printed};oracle={oracle}"));
            }
        }
        Ok(SpectrumRow {
            q,
            energy: rat_to_f64(&p.energy(q.n)),
            delta_e_numeric: theta2 * rat_to_f64(&delta),
            delta_e_exact: delta,
            bound_numeric: theta2 * rat_to_f64(&bound),
            flags,
        })
    });
    rows.into_iter().collect()
}
