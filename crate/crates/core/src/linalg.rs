// Copyright 2026 The rsp-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Small dense complex kernels for d ≤ 8 operators.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Result, RspError};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Unitarity tolerance for correction and basis-change matrices.
pub const UNITARY_TOL: f64 = 1e-12;

/// ⟨a|b⟩, conjugating the left argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        CMatrix { dim, entries }
    }

    /// Builds a matrix from row-major entries; panics if the length is not a square.
    pub fn from_row_major(dim: usize, entries: Vec<C64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {dim}x{dim} entries");
        CMatrix { dim, entries }
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        Self::from_row_major(dim, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diag(values: &[C64]) -> Self {
        Self::from_fn(values.len(), |r, c| if r == c { values[r] } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn row(&self, row: usize) -> &[C64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        CMatrix::from_fn(d, |r, c| (0..d).map(|k| self.get(r, k) * other.get(k, c)).sum())
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn scale(&self, factor: C64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entry of |M·M† − I|.
    pub fn unitarity_deviation(&self) -> f64 {
        self.mul(&self.adjoint()).max_abs_diff(&CMatrix::identity(self.dim))
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Exactly one entry per row and per column has modulus ≈ 1, all others ≈ 0.
    pub fn is_monomial(&self, tol: f64) -> bool {
        let d = self.dim;
        let row_ok = (0..d).all(|r| {
            let mags: Vec<f64> = (0..d).map(|c| self.get(r, c).norm()).collect();
            mags.iter().filter(|m| (*m - 1.0).abs() <= tol).count() == 1
                && mags.iter().filter(|m| **m > tol).count() == 1
        });
        let col_ok = (0..d).all(|c| {
            let mags: Vec<f64> = (0..d).map(|r| self.get(r, c).norm()).collect();
            mags.iter().filter(|m| (*m - 1.0).abs() <= tol).count() == 1
                && mags.iter().filter(|m| **m > tol).count() == 1
        });
        row_ok && col_ok
    }

    /// True if `self = e^{iλ}·other` for some λ, entry-wise within `tol`.
    pub fn equal_up_to_phase(&self, other: &CMatrix, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some((idx, pivot)) = other
            .entries
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        else {
            return true;
        };
        if pivot.norm() <= tol {
            return self.entries.iter().all(|x| x.norm() <= tol);
        }
        let ratio = self.entries[idx] / pivot;
        if (ratio.norm() - 1.0).abs() > tol {
            return false;
        }
        self.max_abs_diff(&other.scale(ratio)) <= tol
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim))?;
        for r in 0..self.dim {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

/// A square matrix verified unitary within [`UNITARY_TOL`] at construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dev = matrix.unitarity_deviation();
        if dev > UNITARY_TOL || !dev.is_finite() {
            return Err(RspError::NotUnitary(dev));
        }
        Ok(UnitaryMatrix(matrix))
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix(CMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0.get(row, col)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.0.apply(v)
    }

    /// `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix(self.0.mul(&other.0))
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix(self.0.adjoint())
    }

    pub fn equal_up_to_phase(&self, other: &UnitaryMatrix, tol: f64) -> bool {
        self.0.equal_up_to_phase(&other.0, tol)
    }
}
