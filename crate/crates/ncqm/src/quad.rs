//! Gauss-Legendre and Gauss-Laguerre rules plus the adaptive radial and
//! spherical quadrature oracles used to cross-check every closed form.

use crate::error::{Error, Result};
use crate::symfield::ScalarField;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j as f64 + 1.0) * x * p1 - j as f64 * p2) / (j as f64 + 1.0);
            }
            pp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
            let dx = p0 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    // returns (L_n(x), L_{n-1}(x))
    let mut p0 = 1.0;
    let mut p1 = 0.0;
    for j in 0..n {
        let p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j as f64 + 1.0 - x) * p1 - j as f64 * p2) / (j as f64 + 1.0);
    }
    (p0, p1)
}

/// Gauss-Laguerre nodes and weights for integrals with weight exp(-t) on
/// [0, inf).
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n {
        let mut z = if i == 0 {
            3.0 / (1.0 + 2.4 * nf)
        } else if i == 1 {
            nodes[0] + 15.0 / (1.0 + 2.5 * nf)
        } else {
            let ai = (i - 1) as f64;
            nodes[i - 1] + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (nodes[i - 1] - nodes[i - 2])
        };
        for _ in 0..200 {
            let (p0, p1) = laguerre_pair(n, z);
            let pp = nf * (p0 - p1) / z;
            let dz = p0 / pp;
            z -= dz;
            if dz.abs() < 1e-14 * z.max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        let (_, _p1) = laguerre_pair(n, z);
        weights[i] = z / ((nf + 1.0) * (nf + 1.0)
            * {
                let (q0, _) = laguerre_pair(n + 1, z);
                q0 * q0
            });
    }
    (nodes, weights)
}

/// Integral of `f(r)` over [0, inf) where `f` decays at least like
/// `exp(-rate * r)`: scaled Gauss-Laguerre with node doubling until two
/// successive estimates agree to `rel_tol`.
pub fn radial_laguerre_adaptive(
    f: &dyn Fn(f64) -> f64,
    rate: f64,
    rel_tol: f64,
) -> Result<f64> {
    let mut prev = f64::NAN;
    let mut n = 16;
    for doubling in 0..6 {
        let (t, w) = gauss_laguerre(n);
        let mut est = 0.0;
        let mut est_abs = 0.0;
        for (&ti, &wi) in t.iter().zip(&w) {
            let r = ti / rate;
            let v = wi * f(r) * (ti).exp() / rate;
            est += v;
            est_abs += v.abs();
        }
        if doubling > 0 {
            // the L1-norm floor handles integrals that vanish by
            // cancellation, where a pure relative test chases roundoff
            let noise = 1e-13 * est_abs;
            let scale = est.abs().max(prev.abs());
            if (est - prev).abs() <= rel_tol * scale + noise {
                return Ok(est);
            }
        }
        prev = est;
        n *= 2;
    }
    Err(Error::QuadratureNonConvergence(6))
}

/// Composite Gauss-Legendre integral on [0, rmax] with panel doubling
/// until successive estimates agree to `rel_tol`. `f` returns the signed
/// integrand together with its pre-cancellation magnitude, which sets the
/// noise floor for integrals that vanish by symmetry.
pub fn radial_panels(f: &dyn Fn(f64) -> (f64, f64), rmax: f64, rel_tol: f64) -> Result<f64> {
    let (x, w) = gauss_legendre(32);
    let mut prev = f64::NAN;
    let mut panels = 2;
    for doubling in 0..10 {
        let h = rmax / panels as f64;
        let mut est = 0.0;
        let mut est_abs = 0.0;
        for p in 0..panels {
            let a = p as f64 * h;
            for (xi, wi) in x.iter().zip(&w) {
                let r = a + 0.5 * h * (xi + 1.0);
                let (v, mag) = f(r);
                est += 0.5 * h * wi * v;
                est_abs += 0.5 * h * wi * mag;
            }
        }
        if doubling > 0 {
            // the L1-norm floor handles integrals that vanish by
            // cancellation, where a pure relative test chases roundoff
            let noise = 1e-13 * est_abs;
            let scale = est.abs().max(prev.abs());
            if (est - prev).abs() <= rel_tol * scale + noise {
                return Ok(est);
            }
        }
        prev = est;
        panels *= 2;
    }
    Err(Error::QuadratureNonConvergence(10))
}

/// Numerical oracle for `integrate_r3`: product grid with Gauss-Legendre in
/// cos(theta), uniform trapezoid in phi, and an adaptive radial rule.
pub fn quad_r3(field: &ScalarField) -> Result<f64> {
    let n_theta = 24;
    let n_phi = 48;
    let (ct, wt) = gauss_legendre(n_theta);

    // radial decay scale from the slowest envelope of any term
    let mut min_gauss: Option<f64> = None;
    let mut min_expo: Option<f64> = None;
    let mut max_degree: i64 = 0;
    for (k, _) in field.terms() {
        let g = crate::exact::rat_to_f64(&k.gauss);
        let e = crate::exact::rat_to_f64(&k.expo);
        if g > 0.0 {
            min_gauss = Some(min_gauss.map_or(g, |m: f64| m.min(g)));
        }
        if e > 0.0 {
            min_expo = Some(min_expo.map_or(e, |m: f64| m.min(e)));
        }
        let deg: i64 = k.mono.iter().map(|&a| a as i64).sum::<i64>() + k.rad;
        max_degree = max_degree.max(deg);
    }
    let rmax = match (min_gauss, min_expo) {
        (Some(g), None) => ((60.0 + 10.0 * max_degree as f64) / g).sqrt(),
        (None, Some(e)) => (90.0 + 15.0 * max_degree as f64) / e,
        (Some(g), Some(e)) => ((60.0 + 10.0 * max_degree as f64) / g).sqrt().max(30.0 / e),
        (None, None) => return Err(Error::Divergent("no envelope".into())),
    };

    let angular = |r: f64| -> (f64, f64) {
        let mut acc = 0.0;
        let mut acc_abs = 0.0;
        for (c, wc) in ct.iter().zip(&wt) {
            let st = (1.0 - c * c).sqrt();
            for ip in 0..n_phi {
                let phi = 2.0 * std::f64::consts::PI * ip as f64 / n_phi as f64;
                let p = [r * st * phi.cos(), r * st * phi.sin(), r * c];
                let v = field.evaluate(&p).map(|v| v.re).unwrap_or(0.0);
                acc += wc * v;
                acc_abs += wc * v.abs();
            }
        }
        let norm = 2.0 * std::f64::consts::PI / n_phi as f64;
        (acc * norm, acc_abs * norm)
    };
    radial_panels(
        &|r| {
            let (v, mag) = angular(r);
            (r * r * v, r * r * mag)
        },
        rmax,
        1e-11,
    )
}
