//! Labeled tensor-product spaces.
//!
//! A `TensorSpace` is an ordered list of labeled factors, e.g. `C (x) D (x) C`.
//! The basis of the product is enumerated row-major with the **leftmost factor
//! most significant**: the flat index of `e_{i1} (x) ... (x) e_{ik}` is
//! `((i1 * d2 + i2) * d3 + i3) ...`. Every matrix in the crate is written
//! against this one convention, so the two sides of any commuting diagram can
//! be compared entrywise.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSpace {
    factors: Vec<(String, usize)>,
}

impl TensorSpace {
    /// The ground field k, i.e. the empty tensor product (total dim 1).
    pub fn unit() -> Self {
        TensorSpace { factors: vec![] }
    }

    /// A single labeled factor.
    pub fn single(label: &str, dim: usize) -> Self {
        TensorSpace {
            factors: vec![(label.to_string(), dim)],
        }
    }

    pub fn from_factors(factors: Vec<(String, usize)>) -> Self {
        TensorSpace { factors }
    }

    pub fn factors(&self) -> &[(String, usize)] {
        &self.factors
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|(_, d)| *d).collect()
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|(_, d)| d).product()
    }

    /// Concatenate factor lists: `self (x) other`.
    pub fn tensor(&self, other: &TensorSpace) -> TensorSpace {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        TensorSpace { factors }
    }

    /// Tensor product of several spaces in order.
    pub fn tensor_all(spaces: &[&TensorSpace]) -> TensorSpace {
        let mut factors = Vec::new();
        for s in spaces {
            factors.extend(s.factors.iter().cloned());
        }
        TensorSpace { factors }
    }

    /// Flat index of a multi-index (leftmost factor most significant).
    pub fn flatten(&self, multi: &[usize]) -> usize {
        debug_assert_eq!(multi.len(), self.factors.len());
        let mut idx = 0;
        for (k, (_, d)) in self.factors.iter().enumerate() {
            debug_assert!(multi[k] < *d);
            idx = idx * d + multi[k];
        }
        idx
    }

    /// Multi-index of a flat basis index.
    pub fn unflatten(&self, mut idx: usize) -> Vec<usize> {
        let mut multi = vec![0; self.factors.len()];
        for (k, (_, d)) in self.factors.iter().enumerate().rev() {
            multi[k] = idx % d;
            idx /= d;
        }
        multi
    }

    /// Same factor dimensions and labels, in the same order.
    pub fn same_shape(&self, other: &TensorSpace) -> bool {
        self.factors == other.factors
    }
}

impl fmt::Display for TensorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "k");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(l, d)| format!("{l}[{d}]"))
            .collect();
        write!(f, "{}", parts.join("(x)"))
    }
}
