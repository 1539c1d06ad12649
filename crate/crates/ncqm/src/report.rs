//! Machine-readable verification reports: deterministic JSON and CSV.

use serde::Serialize;

use crate::hydrogen::SpectrumRow;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// One verification record; `exact` carries the unrounded rational (or
/// residual) rendering, `numeric` a float view of the same quantity.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub exact: String,
    pub numeric: f64,
    pub status: Status,
}

impl Check {
    pub fn pass(name: impl Into<String>, exact: impl Into<String>, numeric: f64) -> Self {
        Check { name: name.into(), exact: exact.into(), numeric, status: Status::Pass }
    }

    pub fn fail(name: impl Into<String>, exact: impl Into<String>, numeric: f64) -> Self {
        Check { name: name.into(), exact: exact.into(), numeric, status: Status::Fail }
    }

    pub fn info(name: impl Into<String>, exact: impl Into<String>, numeric: f64) -> Self {
        Check { name: name.into(), exact: exact.into(), numeric, status: Status::Info }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, exact: impl Into<String>) -> Self {
        if ok {
            Check::pass(name, exact, 0.0)
        } else {
            Check::fail(name, exact, f64::NAN)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamEcho {
    pub theta: f64,
    pub e2: String,
    pub fspec: i64,
    pub nmax: u32,
    pub seed: u64,
}

/// Full report; `runtime_ms` is serialized as null so identical runs emit
/// byte-identical output.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: ParamEcho,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
    pub version: String,
    pub runtime_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: ParamEcho) -> Self {
        Report {
            command: command.into(),
            params,
            checks: Vec::new(),
            flags: Vec::new(),
            version: VERSION.into(),
            runtime_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn merge(&mut self, other: Report) {
        let prefix = other.command;
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
        self.flags.extend(other.flags);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

pub const SPECTRUM_CSV_HEADER: &str =
    "n,l,m,E_n,delta_E_coeff_exact,delta_E_numeric,bound_numeric,flags";

/// Fixed-header CSV for spectrum/bounds sweeps; exact coefficients kept as
/// rational strings, floats in shortest round-trip form.
pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from(SPECTRUM_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.q.n,
            r.q.l,
            r.q.m,
            r.energy,
            r.delta_e_exact,
            r.delta_e_numeric,
            r.bound_numeric,
            r.flags.join(";"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn echo() -> ParamEcho {
        ParamEcho { theta: 0.0, e2: "1".into(), fspec: 0, nmax: 3, seed: 7 }
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new("verify-poisson", echo());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], serde_json::json!([]));
        assert_eq!(v["command"], "verify-poisson");
    }

    #[test]
    fn status_rolls_up() {
        let mut r = Report::new("x", echo());
        r.push(Check::pass("a", "0", 0.0));
        r.push(Check::info("b", "5/4", 1.25));
        assert!(r.all_pass());
        r.push(Check::fail("c", "1", 1.0));
        assert!(!r.all_pass());
    }

    #[test]
    fn csv_header_is_fixed() {
        assert_eq!(
            spectrum_csv(&[]).lines().next().unwrap(),
            "n,l,m,E_n,delta_E_coeff_exact,delta_E_numeric,bound_numeric,flags"
        );
    }
}
