//! Pass/fail reports returned by the exhaustive checkers.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    /// Set on classification reports: the same datum also indexes the tensor
    /// localizing subcategories of finite type of the big graded category.
    pub localizing_finite_type_bijection: bool,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.title;
        for c in other.checks {
            let name = if prefix.is_empty() { c.name } else { format!("{prefix}: {}", c.name) };
            self.checks.push(Check { name, ..c });
        }
        self.localizing_finite_type_bijection |= other.localizing_finite_type_bijection;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {tag} {}", c.name)?;
            } else {
                writeln!(f, "  {tag} {} ({})", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}
