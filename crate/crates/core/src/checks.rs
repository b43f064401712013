//! Named pass/fail records shared by all verification routines.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub ok: bool,
    /// Exact residual or a short explanation; empty when there is nothing to say.
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { id: id.into(), ok, detail: detail.into() });
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckList) {
        for c in other.checks {
            self.checks.push(Check { id: format!("{prefix}{}", c.id), ..c });
        }
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for CheckList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.id)?;
            } else {
                writeln!(f, "{mark} {}: {}", c.id, c.detail)?;
            }
        }
        Ok(())
    }
}
