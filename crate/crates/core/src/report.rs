//! Verdict trees shared by the eigenspace checks and the verification suites.

use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;

/// One exact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// A witness polynomial when the check fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Polynomial>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: None,
            counterexample: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Attach `witness` only when the check failed.
    pub fn witness(mut self, witness: Option<Polynomial>) -> Self {
        if !self.pass {
            self.counterexample = witness;
        }
        self
    }

    /// A check that could not be carried out is a failure.
    pub fn error(name: impl Into<String>, err: &crate::Error) -> Self {
        Check::new(name, false).with_detail(format!("error: {err}"))
    }
}

/// A named node with its own checks and sub-nodes; passes iff everything
/// below it passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Verdict>,
}

impl Verdict {
    pub fn new(name: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            pass: true,
            checks: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn child(&mut self, v: Verdict) {
        self.pass &= v.pass;
        self.children.push(v);
    }

    pub fn with_checks(name: impl Into<String>, checks: Vec<Check>) -> Self {
        let mut v = Verdict::new(name);
        for c in checks {
            v.check(c);
        }
        v
    }

    /// Number of checks in the whole tree, and how many failed.
    pub fn counts(&self) -> (usize, usize) {
        let mut total = self.checks.len();
        let mut failed = self.checks.iter().filter(|c| !c.pass).count();
        for c in &self.children {
            let (t, f) = c.counts();
            total += t;
            failed += f;
        }
        (total, failed)
    }

    /// Indented plain-text rendering, failures expanded.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.render(0, &mut out);
        out
    }

    fn render(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let (t, f) = self.counts();
        out.push_str(&format!(
            "{pad}[{}] {} ({} checks, {} failed)\n",
            if self.pass { "pass" } else { "FAIL" },
            self.name,
            t,
            f
        ));
        for c in self.checks.iter().filter(|c| !c.pass) {
            out.push_str(&format!("{pad}  FAIL {}", c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            if let Some(p) = &c.counterexample {
                out.push_str(&format!(" [witness {p}]"));
            }
            out.push('\n');
        }
        for c in &self.children {
            c.render(depth + 1, out);
        }
    }
}
