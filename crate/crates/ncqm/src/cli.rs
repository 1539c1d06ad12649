//! Command-line configuration, suite dispatch, and report emission.
//!
//! Exit-code contract: 0 = every check passed (flags are informational),
//! 1 = a verification check failed, 2 = invalid input or I/O failure.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, rat_to_f64, CRat, Rat};
use crate::hydrogen::{
    delta_e_closed_f1, delta_e_closed_fr, delta_e_general, hamiltonian_reduction_residual,
    paper_norm_check, radial_expectation_exact, radial_expectation_quadrature, spectrum_sweep,
    l2_residual, schrodinger_residual, PhysicalParams, QuantumNumbers,
};
use crate::operators::{
    adjointness_defect, angular_momentum, commutator_xx, phat, xhat, StateFunction,
};
use crate::poisson::{
    b_symmetry_residual, gauge_tensor_b, jacobi_residual, measure_divergence, Bivector, Measure,
};
use crate::report::{spectrum_csv, Check, ParamEcho, Report};
use crate::starprod::{associator, kontsevich_star, star_prime, star_prime_with_b, trace_defect};
use crate::symfield::ScalarField;

#[derive(Parser, Debug)]
#[command(name = "ncqm", version, about = "Verification suites and spectrum tables for quantum mechanics on rotationally invariant noncommutative space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Deformation parameter (numeric reports only; identities are exact per grade)
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub theta: f64,

    /// Squared charge e^2 as an exact rational: "1", "3/2", or a decimal
    #[arg(long, global = true, default_value = "1")]
    pub e2: String,

    /// Radial profile exponent s in f(r^2) = (r^2)^{s/2}
    #[arg(long, global = true, default_value_t = 0)]
    pub fspec: i64,

    /// Principal quantum number cutoff for sweeps (exact-arithmetic guard: <= 12)
    #[arg(long, global = true, default_value_t = 3)]
    pub nmax: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Output file; stdout when omitted. Relative paths resolve against
    /// NCQM_OUTPUT_DIR when that variable is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for the randomized batteries; echoed in the report
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Jacobi, measure-compatibility and b-symmetry identities
    VerifyPoisson,
    /// Trace property of the gauge-corrected star product and associativity
    VerifyTrace,
    /// Coordinate/momentum operator identities and commutators
    VerifyOperators,
    /// Hydrogen eigenstate identities, reduction, and spectrum cross-checks
    VerifyHydrogen,
    /// Level-shift table over all (n, l, m) up to nmax
    Spectrum,
    /// Nonlocality bound table over all (n, l, m) up to nmax
    Bounds,
    /// Every suite plus the spectrum table in one deterministic report
    ReportAll,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::VerifyPoisson => "verify-poisson",
            Command::VerifyTrace => "verify-trace",
            Command::VerifyOperators => "verify-operators",
            Command::VerifyHydrogen => "verify-hydrogen",
            Command::Spectrum => "spectrum",
            Command::Bounds => "bounds",
            Command::ReportAll => "report-all",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Validated run configuration; every field checked before dispatch.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub theta: f64,
    pub e2: Rat,
    pub fspec: i64,
    pub nmax: u32,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

/// Parse "a/b", an integer, or a finite decimal into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidConfig(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rat::new(num, den));
    }
    Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        if !cli.theta.is_finite() || cli.theta < 0.0 {
            return Err(Error::InvalidConfig(format!("theta must be finite and >= 0, got {}", cli.theta)));
        }
        let e2 = parse_rat(&cli.e2)?;
        if !e2.is_positive() {
            return Err(Error::InvalidConfig(format!("e2 must be > 0, got {e2}")));
        }
        if cli.nmax == 0 || cli.nmax > 12 {
            return Err(Error::InvalidConfig(format!("nmax must be in 1..=12, got {}", cli.nmax)));
        }
        if cli.fspec.unsigned_abs() > 6 {
            return Err(Error::InvalidConfig(format!("fspec must be in -6..=6, got {}", cli.fspec)));
        }
        Ok(RunConfig {
            command: cli.command,
            theta: cli.theta,
            e2,
            fspec: cli.fspec,
            nmax: cli.nmax,
            format: cli.format,
            output: cli.output,
            seed: cli.seed,
        })
    }

    pub fn params(&self) -> PhysicalParams {
        PhysicalParams::new(self.e2.clone(), self.theta, self.fspec)
            .expect("validated config yields valid physical parameters")
    }

    fn echo(&self) -> ParamEcho {
        ParamEcho {
            theta: self.theta,
            e2: self.e2.to_string(),
            fspec: self.fspec,
            nmax: self.nmax,
            seed: self.seed,
        }
    }
}

fn mu_battery() -> Vec<(&'static str, ScalarField)> {
    vec![
        ("1", ScalarField::one(3)),
        ("r^2", ScalarField::radial_power(3, 2)),
        ("exp(-r^2)", ScalarField::gaussian(3, Rat::one())),
    ]
}

/// Random battery element: (1 + low-degree polynomial) * Gaussian, with
/// small integer coefficients so exact arithmetic stays cheap.
fn random_state(rng: &mut ChaCha8Rng) -> ScalarField {
    let beta = rat(rng.gen_range(1..=2), 2);
    let mut poly = ScalarField::one(3);
    for _ in 0..2 {
        let mut t = ScalarField::coord(3, rng.gen_range(0..3));
        if rng.gen_bool(0.5) {
            t = t.mul(&ScalarField::coord(3, rng.gen_range(0..3))).expect("dims match");
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let c = CRat::from_int(sign * rng.gen_range(1..=3));
        poly = poly.add(&t.scale(&c)).expect("dims match");
    }
    poly.mul(&ScalarField::gaussian(3, beta)).expect("dims match")
}

fn all_zero_3d(res: &[Vec<Vec<ScalarField>>]) -> bool {
    res.iter().flatten().flatten().all(ScalarField::is_zero)
}

pub fn verify_poisson(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("verify-poisson", cfg.echo());
    for s in [0i64, 1, 2] {
        let w = Bivector::rotational(s);
        r.push(Check::from_bool(
            format!("jacobi_zero[s={s}]"),
            all_zero_3d(&jacobi_residual(&w)),
            "0",
        ));
        for (name, mu) in mu_battery() {
            let m = Measure::new(mu)?;
            let div_ok = measure_divergence(&m, &w).iter().all(ScalarField::is_zero);
            r.push(Check::from_bool(
                format!("measure_divergence_zero[s={s},mu={name}]"),
                div_ok,
                "0",
            ));
            let sym_ok = b_symmetry_residual(&m, &w)
                .iter()
                .flatten()
                .all(ScalarField::is_zero);
            r.push(Check::from_bool(
                format!("b_symmetry_zero[s={s},mu={name}]"),
                sym_ok,
                "0",
            ));
        }
    }
    // documented non-Poisson control: w^{12}=y, w^{13}=z, w^{23}=x has
    // Jacobi residual J^{123} = -2x
    let bad = Bivector::from_upper(
        3,
        &[
            (0, 1, ScalarField::coord(3, 1)),
            (0, 2, ScalarField::coord(3, 2)),
            (1, 2, ScalarField::coord(3, 0)),
        ],
    )?;
    let j = &jacobi_residual(&bad)[0][1][2];
    let expect = ScalarField::coord(3, 0).scale(&CRat::from_int(-2));
    r.push(Check::from_bool(
        "jacobi_counterexample[J123=-2x]",
        *j == expect,
        "-2*x1",
    ));
    Ok(r)
}

pub fn verify_trace(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("verify-trace", cfg.echo());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mus = mu_battery();
    let pairs = 20usize;
    let mut corrected_zero = 0usize;
    let mut uncorrected_nonzero = 0usize;
    let mut slope_sample = None;
    for k in 0..pairs {
        let s = (k % 2) as i64;
        let (_, mu) = &mus[k % mus.len()];
        let w = Bivector::rotational(s);
        let m = Measure::new(mu.clone())?;
        let f = random_state(&mut rng);
        let g = random_state(&mut rng);
        let d_cor = trace_defect(&f, &g, &star_prime(&w, &m)?, &m)?;
        if d_cor.is_zero() {
            corrected_zero += 1;
        }
        let d_unc = trace_defect(&f, &g, &kontsevich_star(&w), &m)?;
        if !d_unc.grades[2].is_zero() {
            uncorrected_nonzero += 1;
            if slope_sample.is_none() {
                let v1 = d_unc.instantiate(1e-2).norm();
                let v2 = d_unc.instantiate(1e-3).norm();
                slope_sample = Some((v1 / v2).ln() / 10f64.ln());
            }
        }
    }
    r.push(Check::from_bool(
        format!("trace_defect_star_prime_zero[{corrected_zero}/{pairs}]"),
        corrected_zero == pairs,
        "0",
    ));
    let frac = uncorrected_nonzero as f64 / pairs as f64;
    let mut c = Check::from_bool(
        format!("uncorrected_defect_nonzero[{uncorrected_nonzero}/{pairs}]"),
        frac >= 0.9,
        format!("{uncorrected_nonzero}/{pairs}"),
    );
    c.numeric = frac;
    r.push(c);
    let slope = slope_sample.unwrap_or(f64::NAN);
    let mut c = Check::from_bool("uncorrected_defect_theta_slope", (slope - 2.0).abs() <= 0.1, "2");
    c.numeric = slope;
    r.push(c);

    // associativity: the gauge correction must not break it
    let mut assoc_zero = 0usize;
    let triples = 20usize;
    for k in 0..triples {
        let s = (k % 2) as i64;
        let w = Bivector::rotational(s);
        let m = Measure::unit(3);
        let op = star_prime(&w, &m)?;
        let f = random_state(&mut rng);
        let g = random_state(&mut rng);
        let h = random_state(&mut rng);
        if associator(&f, &g, &h, &op)?.is_zero() {
            assoc_zero += 1;
        }
    }
    r.push(Check::from_bool(
        format!("associator_star_prime_zero[{assoc_zero}/{triples}]"),
        assoc_zero == triples,
        "0",
    ));

    // negative control 1: an asymmetrized b tensor loses the trace property
    // (any symmetric-or-not first-derivative correction keeps associativity
    // at this order, so the trace is the sharp diagnostic)
    let w = Bivector::rotational(0);
    let m = Measure::unit(3);
    let mut b = gauge_tensor_b(&m, &w)?;
    b[0][1] = b[0][1].add(&ScalarField::one(3))?;
    let bad_star = star_prime_with_b(&w, &b);
    let f = ScalarField::coord(3, 0).mul(&ScalarField::gaussian(3, Rat::one()))?;
    let g = ScalarField::coord(3, 1).mul(&ScalarField::gaussian(3, Rat::one()))?;
    let d = trace_defect(&f, &g, &bad_star, &m)?;
    r.push(Check::from_bool(
        "asymmetrized_b_breaks_trace",
        !d.grades[2].is_zero(),
        "nonzero grade-2 defect",
    ));

    // negative control 2: flipping the sign of the bracket-derived grade-2
    // terms breaks associativity
    let good = star_prime(&w, &m)?;
    let mut bad = crate::starprod::BidiffOperator::empty(3);
    for t in good.terms() {
        let mut t = t.clone();
        if t.grade == 2 && t.left.len() + t.right.len() == 3 {
            t.coeff = t.coeff.neg();
        }
        bad.push_term(t);
    }
    let af = ScalarField::coord(3, 0).pow(2).mul(&ScalarField::gaussian(3, Rat::one()))?;
    let ag = ScalarField::coord(3, 1).mul(&ScalarField::coord(3, 2))?;
    let ah = ScalarField::coord(3, 2).pow(2);
    let a = associator(&af, &ag, &ah, &bad)?;
    r.push(Check::from_bool(
        "perturbed_grade2_breaks_associativity",
        !a.is_zero(),
        "nonzero associator",
    ));
    Ok(r)
}

pub fn verify_operators(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("verify-operators", cfg.echo());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6f70);
    let s = cfg.fspec;
    let w = Bivector::rotational(s);
    let m = Measure::unit(3);
    let star = star_prime(&w, &m)?;
    let psi = random_state(&mut rng);

    let mut route_ok = true;
    for axis in 0..3 {
        let lhs = xhat(axis, &w, &m)?.apply(&psi)?;
        let rhs = star.apply(&ScalarField::coord(3, axis), &psi)?;
        route_ok &= lhs.sub(&rhs)?.is_zero();
    }
    r.push(Check::from_bool("xhat_equals_star_route", route_ok, "0"));

    let mut adj_x = true;
    let mut adj_p = true;
    for _ in 0..4 {
        let phi = StateFunction::new(random_state(&mut rng));
        let chi = StateFunction::new(random_state(&mut rng));
        for axis in 0..3 {
            adj_x &= adjointness_defect(&xhat(axis, &w, &m)?, &phi, &chi, &star, &m)?.is_zero();
            adj_p &= adjointness_defect(&phat(axis, &m)?, &phi, &chi, &star, &m)?.is_zero();
        }
    }
    r.push(Check::from_bool("xhat_self_adjoint", adj_x, "0"));
    r.push(Check::from_bool("phat_self_adjoint", adj_p, "0"));

    let mut pp_ok = true;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = phat(i, &m)?.commutator_apply(&phat(j, &m)?, &psi)?;
        pp_ok &= c.is_zero();
    }
    r.push(Check::from_bool("momentum_commutators_zero", pp_ok, "0"));

    // [x^i, x^j] psi: grade 1 = i w^{ij} psi, grade 2 = (i/2) f^2 e^{ijk} L_k psi
    let f2 = ScalarField::radial_power(3, 2 * s);
    let mut xx_ok = true;
    for (i, j, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let c = commutator_xx(i, j, &w, &m, &StateFunction::new(psi.clone()))?;
        let g1 = w.entry(i, j).mul(&psi)?.scale(&CRat::i());
        let g2 = f2
            .mul(&angular_momentum(k, &psi))?
            .scale(&CRat::i().mul(&CRat::from_ratio(1, 2)));
        xx_ok &= c.grades[0].is_zero()
            && c.grades[1] == g1
            && c.grades[2] == g2;
    }
    r.push(Check::from_bool(
        "coordinate_commutator_grades[iw, (i/2)f2L]",
        xx_ok,
        "0",
    ));
    Ok(r)
}

pub fn verify_hydrogen(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("verify-hydrogen", cfg.echo());
    let v = ScalarField::radial_power(3, -1);
    for s in [0i64, 1] {
        for l in [0u32, 1, 2] {
            r.push(Check::from_bool(
                format!("hamiltonian_reduction_zero[s={s},l={l}]"),
                hamiltonian_reduction_residual(s, l, &v)?.is_zero(),
                "0",
            ));
        }
    }

    let nmax = cfg.nmax.min(4);
    let p = cfg.params();
    let mut eig_ok = true;
    let mut norm_ok = true;
    for n in 1..=nmax {
        for l in 0..n {
            let q = QuantumNumbers::new(n, l, l as i32)?;
            eig_ok &= schrodinger_residual(q, &p)?.is_zero() && l2_residual(q, &p)?.is_zero();
            norm_ok &= paper_norm_check(q, &p)?;
        }
    }
    r.push(Check::from_bool("eigenstate_residuals_zero", eig_ok, "0"));
    r.push(Check::from_bool("normalization_constants_exact", norm_ok, "0"));

    // printed radial moments against the exact ring
    let mut mom_ok = true;
    for n in 1..=cfg.nmax {
        let q = QuantumNumbers::new(n, 0, 0)?;
        let inv_r = radial_expectation_exact(q, -1, &p)?;
        mom_ok &= inv_r == (rat_int(1) / (rat_int(n as i64 * n as i64) * p.a0()));
        if n >= 2 {
            for l in 1..n {
                let q = QuantumNumbers::new(n, l, 0)?;
                let inv_r3 = radial_expectation_exact(q, -3, &p)?;
                let nn = n as i64;
                let ll = l as i64;
                let denom = rat_int(nn * nn * nn * ll * (ll + 1))
                    * rat(2 * ll + 1, 2)
                    * p.a0() * p.a0() * p.a0();
                mom_ok &= inv_r3 == rat_int(1) / denom;
            }
        }
    }
    r.push(Check::from_bool("radial_moments_match_closed_forms", mom_ok, "0"));

    // general operator shift vs closed forms, both radial profiles
    for (s, name) in [(0i64, "f=1"), (1, "f=r")] {
        let ps = PhysicalParams::new(cfg.e2.clone(), cfg.theta, s)
            .expect("validated config yields valid physical parameters");
        let mut ok = true;
        for n in 1..=cfg.nmax {
            let lmin = if s == 0 { 1 } else { 0 };
            for l in lmin..n {
                let q = QuantumNumbers::new(n, l, 0)?;
                let general = delta_e_general(q, &ps)?;
                let closed = if s == 0 {
                    delta_e_closed_f1(q, &ps)
                } else {
                    delta_e_closed_fr(q, &ps)
                };
                ok &= general == closed;
            }
        }
        r.push(Check::from_bool(
            format!("delta_e_general_equals_closed_form[{name}]"),
            ok,
            "0",
        ));
    }

    // quadrature oracle on the moments feeding the shifts
    let mut worst = 0.0f64;
    for n in 1..=nmax {
        for l in 0..n {
            let q = QuantumNumbers::new(n, l, 0)?;
            for k in [-1i64, 0, 1, 2] {
                let exact = rat_to_f64(&radial_expectation_exact(q, k, &p)?);
                let oracle = radial_expectation_quadrature(q, k, &p)?;
                worst = worst.max(((oracle - exact) / exact).abs());
            }
            if l >= 1 {
                let exact = rat_to_f64(&radial_expectation_exact(q, -3, &p)?);
                let oracle = radial_expectation_quadrature(q, -3, &p)?;
                worst = worst.max(((oracle - exact) / exact).abs());
            }
        }
    }
    let mut c = Check::from_bool("quadrature_oracle_rel_error<1e-10", worst < 1e-10, "0");
    c.numeric = worst;
    r.push(c);
    Ok(r)
}

fn sweep_report(cfg: &RunConfig, command: Command) -> Result<Report> {
    let mut r = Report::new(command.name(), cfg.echo());
    let rows = spectrum_sweep(cfg.nmax, &cfg.params())?;
    for row in &rows {
        let numeric = match command {
            Command::Bounds => row.bound_numeric,
            _ => row.delta_e_numeric,
        };
        r.push(Check::info(
            format!("n={},l={},m={}", row.q.n, row.q.l, row.q.m),
            row.delta_e_exact.to_string(),
            numeric,
        ));
        for f in &row.flags {
            if !r.flags.contains(f) {
                r.flags.push(f.clone());
            }
        }
    }
    Ok(r)
}

pub fn spectrum(cfg: &RunConfig) -> Result<Report> {
    sweep_report(cfg, Command::Spectrum)
}

pub fn bounds(cfg: &RunConfig) -> Result<Report> {
    sweep_report(cfg, Command::Bounds)
}

pub fn report_all(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("report-all", cfg.echo());
    r.merge(verify_poisson(cfg)?);
    r.merge(verify_trace(cfg)?);
    r.merge(verify_operators(cfg)?);
    r.merge(verify_hydrogen(cfg)?);
    r.merge(spectrum(cfg)?);
    Ok(r)
}

/// Dispatch; returns the rendered output and the process exit code.
pub fn run(cfg: &RunConfig) -> Result<(String, i32)> {
    if cfg.format == Format::Csv {
        if !matches!(cfg.command, Command::Spectrum | Command::Bounds) {
            return Err(Error::InvalidConfig(
                "csv format is only available for spectrum and bounds".into(),
            ));
        }
        let rows = spectrum_sweep(cfg.nmax, &cfg.params())?;
        return Ok((spectrum_csv(&rows), 0));
    }
    let report = match cfg.command {
        Command::VerifyPoisson => verify_poisson(cfg)?,
        Command::VerifyTrace => verify_trace(cfg)?,
        Command::VerifyOperators => verify_operators(cfg)?,
        Command::VerifyHydrogen => verify_hydrogen(cfg)?,
        Command::Spectrum => spectrum(cfg)?,
        Command::Bounds => bounds(cfg)?,
        Command::ReportAll => report_all(cfg)?,
    };
    let code = if report.all_pass() { 0 } else { 1 };
    Ok((report.to_json(), code))
}

/// Write to the resolved output path, or stdout when none is given.
pub fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => {
            let resolved = match std::env::var_os("NCQM_OUTPUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.to_path_buf(),
            };
            std::fs::write(&resolved, text)
                .map_err(|e| Error::Io(format!("{}: {e}", resolved.display())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig {
            command,
            theta: 1e-3,
            e2: Rat::one(),
            fspec: 0,
            nmax: 3,
            format: Format::Json,
            output: None,
            seed: 7,
        }
    }

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("1").unwrap(), rat_int(1));
        assert_eq!(parse_rat("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn config_validation() {
        let cli = |nmax, theta, e2: &str| Cli {
            command: Command::Spectrum,
            theta,
            e2: e2.into(),
            fspec: 0,
            nmax,
            format: Format::Json,
            output: None,
            seed: 0,
        };
        assert!(RunConfig::from_cli(cli(3, 1e-3, "1")).is_ok());
        assert!(RunConfig::from_cli(cli(13, 1e-3, "1")).is_err());
        assert!(RunConfig::from_cli(cli(3, -1.0, "1")).is_err());
        assert!(RunConfig::from_cli(cli(3, 1e-3, "0")).is_err());
        assert!(RunConfig::from_cli(cli(3, 1e-3, "-2")).is_err());
    }

    #[test]
    fn poisson_suite_passes() {
        let r = verify_poisson(&cfg(Command::VerifyPoisson)).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
    }

    #[test]
    fn spectrum_rows_cover_all_quantum_numbers() {
        let r = spectrum(&cfg(Command::Spectrum)).unwrap();
        // sum over n<=3 of n^2 states
        assert_eq!(r.checks.len(), 14);
        assert!(r.flags.iter().any(|f| f.starts_with("l0_closed_form")));
    }

    #[test]
    fn csv_only_for_sweeps() {
        let mut c = cfg(Command::VerifyPoisson);
        c.format = Format::Csv;
        assert!(run(&c).is_err());
    }
}
