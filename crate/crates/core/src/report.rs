//! Axiom-check reports with counterexample witnesses.

use std::fmt;

use serde_json::{json, Value};

use crate::field::Field;
use crate::matrix::{multi_index, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub axiom: String,
    /// The identity being checked, in formula form.
    pub anchor: String,
    pub passed: bool,
    /// Basis coordinates of a first counterexample.
    pub witness: Option<Vec<usize>>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub object: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(object: impl Into<String>) -> Self {
        Report { object: object.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.failures().map(|c| c.axiom.as_str()).collect()
    }

    pub fn get(&self, axiom: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn record(
        &mut self,
        axiom: impl Into<String>,
        anchor: impl Into<String>,
        passed: bool,
        witness: Option<Vec<usize>>,
    ) -> &mut Check {
        self.checks.push(Check {
            axiom: axiom.into(),
            anchor: anchor.into(),
            passed,
            witness,
            note: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    /// Compares two maps entrywise. The witness is the first differing column,
    /// decoded as a multi-index over `src_dims`.
    pub fn equal_maps<F: Field>(
        &mut self,
        axiom: &str,
        anchor: &str,
        lhs: &Matrix<F>,
        rhs: &Matrix<F>,
        src_dims: &[usize],
    ) -> bool {
        if lhs.shape() != rhs.shape() {
            let (l, r) = (lhs.shape(), rhs.shape());
            self.record(axiom, anchor, false, None).note =
                Some(format!("shape mismatch: {}x{} vs {}x{}", l.0, l.1, r.0, r.1));
            return false;
        }
        let diff = lhs.first_differing_col(rhs);
        let witness = diff.map(|c| decode(c, src_dims));
        self.record(axiom, anchor, diff.is_none(), witness);
        diff.is_none()
    }

    /// Records that `m` is the zero map.
    pub fn zero_map<F: Field>(&mut self, axiom: &str, anchor: &str, m: &Matrix<F>, src_dims: &[usize]) -> bool {
        let z = Matrix::zeros(m.rows(), m.cols());
        self.equal_maps(axiom, anchor, m, &z, src_dims)
    }

    pub fn note(&mut self, axiom: impl Into<String>, text: impl Into<String>) {
        let c = self.record(axiom, "", true, None);
        c.note = Some(text.into());
    }

    /// Appends the checks of `other`, prefixing each axiom id.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.axiom = format!("{prefix}.{}", c.axiom);
            self.checks.push(c);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "object": self.object,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "axiom": c.axiom,
                "anchor": c.anchor,
                "passed": c.passed,
                "witness": c.witness,
                "note": c.note,
            })).collect::<Vec<_>>(),
        })
    }
}

fn decode(col: usize, dims: &[usize]) -> Vec<usize> {
    if dims.is_empty() || dims.iter().product::<usize>() == 0 {
        vec![col]
    } else {
        multi_index(col, dims)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {}", self.object)?;
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "  [{tag}] {}", c.axiom)?;
            if !c.anchor.is_empty() {
                write!(f, "  {}", c.anchor)?;
            }
            if let Some(w) = &c.witness {
                write!(f, "  witness {w:?}")?;
            }
            if let Some(n) = &c.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
