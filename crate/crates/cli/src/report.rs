//! Check reports: aligned-column text and machine-readable JSON. All
//! fields are deterministic so identical inputs produce byte-identical
//! output.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, observed: impl Into<String>, tolerance: Option<f64>, pass: bool) -> Self {
        Check {
            name: name.into(),
            observed: observed.into(),
            tolerance,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            command: command.into(),
            seed: None,
            trials: None,
            checks,
            pass,
        }
    }

    pub fn with_run(mut self, seed: u64, trials: usize) -> Self {
        self.seed = Some(seed);
        self.trials = Some(trials);
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let name_w = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .max(5);
        let obs_w = self
            .checks
            .iter()
            .map(|c| c.observed.len())
            .max()
            .unwrap_or(0)
            .max(8);
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        if let (Some(seed), Some(trials)) = (self.seed, self.trials) {
            out.push_str(&format!("seed {seed}  trials {trials}\n"));
        }
        out.push_str(&format!(
            "{:<name_w$}  {:<obs_w$}  {:<12}  {}\n",
            "check", "observed", "tolerance", "status"
        ));
        for c in &self.checks {
            let tol = c
                .tolerance
                .map(|t| format!("{t:.1e}"))
                .unwrap_or_else(|| "-".to_string());
            out.push_str(&format!(
                "{:<name_w$}  {:<obs_w$}  {:<12}  {}\n",
                c.name,
                c.observed,
                tol,
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }
}

/// Complex value formatted as `re + im i` with full-precision parts.
pub fn fmt_complex(z: mink_core::Complex64) -> String {
    if z.im >= 0.0 {
        format!("{} + {}i", z.re, z.im)
    } else {
        format!("{} - {}i", z.re, -z.im)
    }
}
