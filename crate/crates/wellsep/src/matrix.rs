//! Dense square matrices with complex entries, the universal input type.
//!
//! Real matrices are stored with zero imaginary parts. A matrix carries a
//! declared symmetry tag; the `Symmetric` tag is verified entrywise (exact
//! equality) on construction so downstream fast paths can trust it.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Declared structure of a [`DenseMatrix`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Symmetry {
    General,
    Symmetric,
}

/// Immutable dense square matrix, row-major complex storage.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<Complex64>,
    symmetry: Symmetry,
}

impl DenseMatrix {
    /// Builds a matrix from row-major complex entries.
    pub fn from_complex(n: usize, entries: Vec<Complex64>, symmetry: Symmetry) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("matrix dimension must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::NotSquare {
                rows: n,
                cols: entries.len() / n.max(1),
            });
        }
        let m = DenseMatrix { n, entries, symmetry };
        if symmetry == Symmetry::Symmetric {
            for i in 0..n {
                for j in (i + 1)..n {
                    if m.get(i, j) != m.get(j, i) {
                        return Err(Error::NotSymmetric { i, j });
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a general matrix from row-major real entries.
    pub fn from_real(n: usize, entries: &[f64], symmetry: Symmetry) -> Result<Self> {
        let complex = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_complex(n, complex, symmetry)
    }

    /// Builds a general real matrix from explicit rows; handy in tests.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        let symmetry = {
            let all_sym = (0..n).all(|i| (0..n).all(|j| rows[i][j] == rows[j][i]));
            if all_sym { Symmetry::Symmetric } else { Symmetry::General }
        };
        Self::from_complex(n, entries, symmetry)
    }

    /// Diagonal matrix with the given real diagonal.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut entries = vec![Complex64::ZERO; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = Complex64::new(d, 0.0);
        }
        Self::from_complex(n, entries, Symmetry::Symmetric)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    /// Real part of entry (i, j).
    #[inline]
    pub fn re(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j].re
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Row-major real storage; errors if any entry has an imaginary part.
    pub fn real_entries(&self) -> Result<Vec<f64>> {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j).im != 0.0 {
                    return Err(Error::NotReal { i, j });
                }
            }
        }
        Ok(self.entries.iter().map(|z| z.re).collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest real part over the diagonal.
    pub fn max_diag_re(&self) -> f64 {
        (0..self.n).map(|i| self.re(i, i)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n, "matvec dimension mismatch");
        let mut out = vec![Complex64::ZERO; self.n];
        for i in 0..self.n {
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            out[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// A + t * other; keeps the symmetric tag only when both operands carry it.
    pub fn add_scaled(&self, other: &DenseMatrix, t: f64) -> Result<DenseMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{0} and {}x{1} matrices",
                self.n, other.n
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + t * b)
            .collect();
        let symmetry = if self.symmetry == Symmetry::Symmetric && other.symmetry == Symmetry::Symmetric
        {
            Symmetry::Symmetric
        } else {
            Symmetry::General
        };
        DenseMatrix::from_complex(self.n, entries, symmetry)
    }

    /// Symmetric permutation P^T A P: entry (i, j) of the result is `A(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DenseMatrix> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch("permutation length != n".into()));
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                entries.push(self.get(perm[i], perm[j]));
            }
        }
        DenseMatrix::from_complex(self.n, entries, self.symmetry)
    }

    /// Canonical byte encoding (little-endian re/im pairs) used for input hashing.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 16 * self.entries.len());
        out.extend_from_slice(&(self.n as u64).to_le_bytes());
        for z in &self.entries {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
        out
    }
}

/// Dense real matvec on row-major storage, shared by the iterative solvers.
pub(crate) fn real_matvec(a: &[f64], n: usize, x: &[f64], out: &mut [f64]) {
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        out[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
    }
}
