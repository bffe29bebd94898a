//! Check reports, rendered as text or JSON with 12 significant digits.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse::<f64>().expect("formatted float parses") + 0.0
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Scalar(x) => s.serialize_f64(round_sig(*x)),
            Value::Vector(v) => s.collect_seq(v.iter().map(|x| round_sig(*x))),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Scalar(x) => write!(f, "{:?}", round_sig(*x)),
            Value::Vector(v) => {
                write!(f, "[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{:?}", round_sig(*x))?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: Value,
    #[serde(serialize_with = "rounded")]
    pub tolerance: f64,
    pub pass: bool,
    /// The quantity compared against `tolerance`.
    #[serde(skip)]
    measure: f64,
}

fn rounded<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

impl Check {
    fn new(name: impl Into<String>, value: Value, measure: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, pass: measure <= tolerance, measure }
    }

    /// Passes when `|value| ≤ tol`.
    pub fn within(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self::new(name, Value::Scalar(value), value.abs(), tol)
    }

    /// Passes when `|value - expected| ≤ tol`.
    pub fn near(name: impl Into<String>, value: f64, expected: f64, tol: f64) -> Self {
        Self::new(name, Value::Scalar(value), (value - expected).abs(), tol)
    }

    /// Reports `[a, b]`; passes when `|a - b| ≤ tol`.
    pub fn agree(name: impl Into<String>, a: f64, b: f64, tol: f64) -> Self {
        Self::new(name, Value::Vector(vec![a, b]), (a - b).abs(), tol)
    }

    /// Reports a list; passes when `deviation ≤ tol`.
    pub fn list(name: impl Into<String>, values: Vec<f64>, deviation: f64, tol: f64) -> Self {
        Self::new(name, Value::Vector(values), deviation, tol)
    }

    fn retolerate(&mut self, tol: f64) {
        if self.tolerance > 0.0 {
            self.tolerance = tol;
            self.pass = self.measure <= tol;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub seed: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Self { command: command.into(), checks: Vec::new(), pass: true, seed }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// Replaces every nonzero tolerance; exact checks stay exact.
    pub fn override_tolerance(&mut self, tol: f64) {
        for c in &mut self.checks {
            c.retolerate(tol);
        }
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => super::json::to_pretty(self),
            Format::Text => {
                let mut s = format!("realq {}\n", self.command);
                let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
                for c in &self.checks {
                    s += &format!(
                        "  {}  {:width$}  {}  (tol {:?})\n",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.value,
                        round_sig(c.tolerance),
                    );
                }
                s += &format!("{} (seed {})\n", if self.pass { "PASS" } else { "FAIL" }, self.seed);
                s
            }
        }
    }
}
