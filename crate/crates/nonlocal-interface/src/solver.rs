//! Direct solution of banded symmetric positive definite systems.
//!
//! The constrained stiffness matrices are symmetric positive definite with a
//! half bandwidth of roughly `delta_max / h`, so a banded Cholesky
//! factorization solves them in `O(n b^2)` time and `O(n b)` memory. The
//! factor is reusable: repeated solves against the same factorization are
//! deterministic down to the last bit.

// Indexed loops here mirror the banded slot arithmetic (`slot(i, j)` pairs
// row/column indices with band offsets); iterator rewrites would hide it.
#![allow(clippy::needless_range_loop)]

use crate::assembly::BandedSymmetricMatrix;
use crate::{Error, Result};

/// Lower-triangular Cholesky factor `L` with the band layout of the input
/// matrix (`A = L L^T`).
#[derive(Debug, Clone, PartialEq)]
pub struct BandedCholeskyFactor {
    dim: usize,
    half_bandwidth: usize,
    data: Vec<f64>,
}

impl BandedCholeskyFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    #[inline]
    fn slot(&self, row: usize, col: usize) -> usize {
        row * (self.half_bandwidth + 1) + (row - col)
    }

    /// Entry `L[i][j]` for `j <= i`; zero outside the band.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if j > i || i - j > self.half_bandwidth {
            0.0
        } else {
            self.data[self.slot(i, j)]
        }
    }
}

/// Factor a symmetric positive definite banded matrix.
///
/// Fails with [`Error::NotPositiveDefinite`] at the first nonpositive (or
/// non-finite) pivot, reporting the offending row.
pub fn factor(a: &BandedSymmetricMatrix) -> Result<BandedCholeskyFactor> {
    let n = a.dim();
    let hb = a.half_bandwidth();
    let mut l = BandedCholeskyFactor {
        dim: n,
        half_bandwidth: hb,
        data: vec![0.0; n * (hb + 1)],
    };
    for i in 0..n {
        let lo = i.saturating_sub(hb);
        for j in lo..=i {
            let mut sum = a.get(i, j);
            let k_lo = lo.max(j.saturating_sub(hb));
            for k in k_lo..j {
                sum -= l.data[l.slot(i, k)] * l.data[l.slot(j, k)];
            }
            if j < i {
                let s = l.slot(i, j);
                l.data[s] = sum / l.data[l.slot(j, j)];
            } else {
                if !sum.is_finite() || sum <= 0.0 {
                    return Err(Error::NotPositiveDefinite { index: i, pivot: sum });
                }
                let s = l.slot(i, i);
                l.data[s] = sum.sqrt();
            }
        }
    }
    Ok(l)
}

/// Solve `A x = rhs` given the Cholesky factor of `A` (forward then backward
/// substitution).
pub fn solve(factor: &BandedCholeskyFactor, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = factor.dim;
    let hb = factor.half_bandwidth;
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rhs.len(),
        });
    }
    let mut x = rhs.to_vec();
    // L y = rhs
    for i in 0..n {
        let lo = i.saturating_sub(hb);
        let mut sum = x[i];
        for j in lo..i {
            sum -= factor.data[factor.slot(i, j)] * x[j];
        }
        x[i] = sum / factor.data[factor.slot(i, i)];
    }
    // L^T x = y
    for i in (0..n).rev() {
        let hi = (i + hb).min(n - 1);
        let mut sum = x[i];
        for j in (i + 1)..=hi {
            sum -= factor.data[factor.slot(j, i)] * x[j];
        }
        x[i] = sum / factor.data[factor.slot(i, i)];
    }
    Ok(x)
}
