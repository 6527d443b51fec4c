//! Structured verdicts for structure checks.
//!
//! A check never panics on mathematical failure: it returns a [`Report`]
//! whose checks either pass or carry a concrete basis-index witness of the
//! first place two maps disagree. Errors (dimension mismatches, malformed
//! input) are a separate channel ([`crate::error::Error`]).

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::linmap::LinMap;

/// Witness of a single failed identity: the two composite maps disagree at
/// matrix entry (`row`, `col`), with both values formatted exactly.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    /// Which identity failed, e.g. "coassociativity".
    pub identity: String,
    /// Flat basis index into the codomain (matrix row).
    pub row: usize,
    /// Flat basis index into the domain (matrix column).
    pub col: usize,
    /// Multi-index of `row` in the codomain, one entry per tensor factor.
    pub row_multi: Vec<usize>,
    /// Multi-index of `col` in the domain.
    pub col_multi: Vec<usize>,
    pub left_value: String,
    pub right_value: String,
}

/// One named identity check with its verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        }
    }
}

/// A bundle of named checks; `passed()` is the conjunction.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Record the comparison `lhs == rhs` under `name`, with a
    /// first-difference witness on failure (row-major scan order).
    pub fn eq_check<F: Field>(&mut self, name: &str, lhs: &LinMap<F>, rhs: &LinMap<F>) {
        self.push(eq_check(name, lhs, rhs));
    }
}

/// Compare two maps entrywise and produce a [`Check`]. The maps must have the
/// same shape; a shape difference is reported as a failure with a synthetic
/// witness at (0, 0) rather than an error, so callers can treat any
/// ill-formed identity as simply false.
pub fn eq_check<F: Field>(name: &str, lhs: &LinMap<F>, rhs: &LinMap<F>) -> Check {
    if !lhs.domain.same_shape(&rhs.domain) || !lhs.codomain.same_shape(&rhs.codomain) {
        return Check::fail(
            name,
            Witness {
                identity: name.into(),
                row: 0,
                col: 0,
                row_multi: vec![],
                col_multi: vec![],
                left_value: format!("{} -> {}", lhs.domain, lhs.codomain),
                right_value: format!("{} -> {}", rhs.domain, rhs.codomain),
            },
        );
    }
    let field = &lhs.field;
    for row in 0..lhs.mat.rows {
        for col in 0..lhs.mat.cols {
            let a = lhs.mat.get(row, col);
            let b = rhs.mat.get(row, col);
            if a != b {
                return Check::fail(
                    name,
                    Witness {
                        identity: name.into(),
                        row,
                        col,
                        row_multi: lhs.codomain.unflatten(row),
                        col_multi: lhs.domain.unflatten(col),
                        left_value: field.format(a),
                        right_value: field.format(b),
                    },
                );
            }
        }
    }
    Check::pass(name)
}
