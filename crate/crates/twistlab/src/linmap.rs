//! Dense exact matrices and linear maps between labeled tensor spaces.
//!
//! `Mat` is the raw row-major matrix; `LinMap` pairs a matrix with its
//! domain/codomain [`TensorSpace`]s and carries the field value. All structure
//! maps of the library (coproducts, counits, products, twists, flips) are
//! `LinMap`s, and every identity asserted anywhere reduces to an entrywise
//! comparison of two composite `LinMap`s.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::space::TensorSpace;

/// Row-major dense matrix over a field `F`. The field value is passed to
/// operations rather than stored, so `Mat` stays a plain buffer.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows_data: Vec<Vec<F::Elem>>) -> Result<Self> {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, Vec::len);
        for r in &rows_data {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "Mat::from_rows (ragged rows)".into(),
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Mat {
            rows,
            cols,
            data: rows_data.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, field: &F, other: &Mat<F>) -> Result<Mat<F>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product".into(),
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Mat::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let v = field.add(cur, &field.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, field: &F, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product".into(),
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![field.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = field.zero();
            for (j, x) in v.iter().enumerate() {
                if field.is_zero(x) {
                    continue;
                }
                acc = field.add(&acc, &field.mul(self.get(i, j), x));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Kronecker product with the fixed row-major basis order:
    /// `(A (x) B)[(i,k),(j,l)] = A[i,j] * B[k,l]` with the left index most
    /// significant.
    pub fn kron(&self, field: &F, other: &Mat<F>) -> Mat<F> {
        let mut out = Mat::zeros(field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if field.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if field.is_zero(b) {
                            continue;
                        }
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            field.mul(a, b),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self, field: &F) -> Mat<F> {
        let mut out = Mat::zeros(field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot column of each
    /// pivot row in order.
    pub fn rref(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Find a pivot in this column at or below `row`.
            let Some(piv) = (row..self.rows).find(|&r| !field.is_zero(self.get(r, col))) else {
                continue;
            };
            if piv != row {
                for c in 0..self.cols {
                    let a = self.get(row, c).clone();
                    let b = self.get(piv, c).clone();
                    self.set(row, c, b);
                    self.set(piv, c, a);
                }
            }
            // Scale the pivot row to make the pivot 1.
            let inv = field
                .inv(self.get(row, col))
                .expect("pivot is nonzero by construction");
            for c in col..self.cols {
                let v = field.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            // Eliminate the column everywhere else.
            for r in 0..self.rows {
                if r == row || field.is_zero(self.get(r, col)) {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = field.sub(self.get(r, c), &field.mul(&factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &F) -> usize {
        let mut m = self.clone();
        m.rref(field).len()
    }

    /// One exact solution of `self * x = b` (free variables set to zero), or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, field: &F, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "solve: right-hand side".into(),
                expected: self.rows,
                found: b.len(),
            });
        }
        // Augment [A | b] and reduce.
        let mut aug = Mat::zeros(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return Ok(None); // pivot in the augmented column: inconsistent
        }
        let mut x = vec![field.zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Basis of the kernel (null space), deterministic order: one vector per
    /// free column, in increasing column order.
    pub fn kernel(&self, field: &F) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &col) in pivots.iter().enumerate() {
                // x_col = -m[row, free]
                v[col] = field.neg(m.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse via Gauss-Jordan; `None` iff the matrix is singular.
    pub fn inverse(&self, field: &F) -> Option<Mat<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, field.one());
        }
        let pivots = aug.rref(field);
        // Invertible iff the left block reduced to the identity.
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Mat::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }
}

/// A linear map between labeled tensor spaces.
///
/// The matrix has `codomain.total_dim()` rows and `domain.total_dim()`
/// columns; column `j` holds the image of the `j`-th domain basis vector.
#[derive(Clone, Debug)]
pub struct LinMap<F: Field> {
    pub field: F,
    pub domain: TensorSpace,
    pub codomain: TensorSpace,
    pub mat: Mat<F>,
}

impl<F: Field> PartialEq for LinMap<F> {
    /// Entrywise equality between maps of identical shape (spaces included).
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.domain.same_shape(&other.domain)
            && self.codomain.same_shape(&other.codomain)
            && self.mat == other.mat
    }
}

impl<F: Field> LinMap<F> {
    pub fn new(field: F, domain: TensorSpace, codomain: TensorSpace, mat: Mat<F>) -> Result<Self> {
        if mat.rows != codomain.total_dim() {
            return Err(Error::DimensionMismatch {
                context: format!("LinMap rows for codomain {codomain}"),
                expected: codomain.total_dim(),
                found: mat.rows,
            });
        }
        if mat.cols != domain.total_dim() {
            return Err(Error::DimensionMismatch {
                context: format!("LinMap cols for domain {domain}"),
                expected: domain.total_dim(),
                found: mat.cols,
            });
        }
        Ok(LinMap {
            field,
            domain,
            codomain,
            mat,
        })
    }

    pub fn identity(field: F, space: &TensorSpace) -> Self {
        let mat = Mat::identity(&field, space.total_dim());
        LinMap {
            field,
            domain: space.clone(),
            codomain: space.clone(),
            mat,
        }
    }

    pub fn zero(field: F, domain: &TensorSpace, codomain: &TensorSpace) -> Self {
        let mat = Mat::zeros(&field, codomain.total_dim(), domain.total_dim());
        LinMap {
            field,
            domain: domain.clone(),
            codomain: codomain.clone(),
            mat,
        }
    }

    /// Build from sparse (row, col, value) entries; later entries add.
    pub fn from_entries(
        field: F,
        domain: &TensorSpace,
        codomain: &TensorSpace,
        entries: &[(usize, usize, F::Elem)],
    ) -> Result<Self> {
        let mut mat = Mat::zeros(&field, codomain.total_dim(), domain.total_dim());
        for (r, c, v) in entries {
            if *r >= mat.rows || *c >= mat.cols {
                return Err(Error::DimensionMismatch {
                    context: format!("entry ({r},{c}) out of range"),
                    expected: mat.rows * mat.cols,
                    found: r * mat.cols + c,
                });
            }
            let cur = mat.get(*r, *c);
            let v = field.add(cur, v);
            mat.set(*r, *c, v);
        }
        LinMap::new(field, domain.clone(), codomain.clone(), mat)
    }

    fn check_field(&self, other: &LinMap<F>, _context: &str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.name(),
                right: other.field.name(),
            });
        }
        Ok(())
    }

    /// Composition `self o other` (apply `other` first). The inner spaces
    /// must agree in labels and dimensions.
    pub fn compose(&self, other: &LinMap<F>) -> Result<LinMap<F>> {
        self.check_field(other, "compose")?;
        if !other.codomain.same_shape(&self.domain) {
            return Err(Error::SpaceMismatch {
                context: "compose".into(),
                left: self.domain.to_string(),
                right: other.codomain.to_string(),
            });
        }
        let mat = self.mat.mul(&self.field, &other.mat)?;
        Ok(LinMap {
            field: self.field.clone(),
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            mat,
        })
    }

    /// Tensor (Kronecker) product; factor lists concatenate.
    pub fn tensor(&self, other: &LinMap<F>) -> Result<LinMap<F>> {
        self.check_field(other, "tensor")?;
        let mat = self.mat.kron(&self.field, &other.mat);
        Ok(LinMap {
            field: self.field.clone(),
            domain: self.domain.tensor(&other.domain),
            codomain: self.codomain.tensor(&other.codomain),
            mat,
        })
    }

    /// Tensor product of several maps in order.
    pub fn tensor_all(maps: &[&LinMap<F>]) -> Result<LinMap<F>> {
        let (first, rest) = maps
            .split_first()
            .expect("tensor_all requires at least one map");
        let mut acc = (*first).clone();
        for m in rest {
            acc = acc.tensor(m)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.mat.apply(&self.field, v)
    }

    /// Transpose: swaps domain and codomain verbatim. Callers that want the
    /// dual-space reading relabel afterwards via [`LinMap::with_spaces`].
    pub fn transpose(&self) -> LinMap<F> {
        LinMap {
            field: self.field.clone(),
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            mat: self.mat.transpose(&self.field),
        }
    }

    /// Reinterpret the same matrix between different (equal-dimensional)
    /// spaces. This is the explicit escape hatch for identifications like
    /// (C (x) D)' = C' (x) D'; ordinary composition stays label-strict.
    pub fn with_spaces(&self, domain: TensorSpace, codomain: TensorSpace) -> Result<LinMap<F>> {
        LinMap::new(self.field.clone(), domain, codomain, self.mat.clone())
    }

    pub fn inverse(&self) -> Option<LinMap<F>> {
        if !self.domain.same_shape(&self.codomain) && self.domain.total_dim() != self.codomain.total_dim() {
            return None;
        }
        let inv = self.mat.inverse(&self.field)?;
        Some(LinMap {
            field: self.field.clone(),
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            mat: inv,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.domain.total_dim() == self.codomain.total_dim()
            && self.mat.rank(&self.field) == self.mat.rows
    }
}

/// The flip map `tau: U (x) V -> V (x) U` on whole (possibly multi-factor)
/// spaces.
pub fn flip<F: Field>(field: F, u: &TensorSpace, v: &TensorSpace) -> LinMap<F> {
    let nu = u.num_factors();
    let nv = v.num_factors();
    let domain = u.tensor(v);
    // Output slot j takes input factor perm[j]: first all of V, then all of U.
    let perm: Vec<usize> = (nu..nu + nv).chain(0..nu).collect();
    permute(field, &domain, &perm)
}

/// Permutation of tensor factors: output slot `j` carries input factor
/// `perm[j]`. `perm` must be a permutation of `0..space.num_factors()`.
pub fn permute<F: Field>(field: F, space: &TensorSpace, perm: &[usize]) -> LinMap<F> {
    assert_eq!(perm.len(), space.num_factors(), "permutation length");
    {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(!seen[p], "permute: not a permutation");
            seen[p] = true;
        }
    }
    let out_factors: Vec<(String, usize)> = perm
        .iter()
        .map(|&p| space.factors()[p].clone())
        .collect();
    let codomain = TensorSpace::from_factors(out_factors);
    let n = space.total_dim();
    let mut mat = Mat::zeros(&field, n, n);
    for col in 0..n {
        let multi = space.unflatten(col);
        let out_multi: Vec<usize> = perm.iter().map(|&p| multi[p]).collect();
        let row = codomain.flatten(&out_multi);
        mat.set(row, col, field.one());
    }
    LinMap {
        field,
        domain: space.clone(),
        codomain,
        mat,
    }
}

/// Kronecker product of two column vectors (basis order as everywhere).
pub fn vec_kron<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(field.mul(x, y));
        }
    }
    out
}

/// Standard basis vector of a space.
pub fn basis_vec<F: Field>(field: &F, space: &TensorSpace, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); space.total_dim()];
    v[i] = field.one();
    v
}
