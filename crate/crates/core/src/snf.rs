//! Smith normal form over the integers, with unimodular transforms.
//!
//! Pivoting always takes the nonzero entry of least absolute value in the
//! active submatrix, ties broken by `(row, col)` order, so the output is a
//! deterministic function of the input.

use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: BigInt },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(BigInt),
}

impl LinalgError {
    pub fn code(&self) -> &'static str {
        match self {
            LinalgError::NotSquare { .. } => "NOT_SQUARE",
            LinalgError::NotUnimodular { .. } => "NOT_UNIMODULAR",
            LinalgError::BadModulus(_) => "BAD_MODULUS",
        }
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` rectangular-diagonal,
/// `d₁ | d₂ | ⋯ | d_r`, all positive, followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn source_rows(&self) -> usize {
        self.d.rows()
    }

    pub fn source_cols(&self) -> usize {
        self.d.cols()
    }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = &d[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            // strict comparison keeps the first (row, col) on ties
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Computes the Smith normal form of `m` together with the transforms.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&d, t) else {
                return SmithDecomposition { u, d, v, invariant_factors: factors };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &pivot;
                d.row_sub_mul(i, t, &q);
                u.row_sub_mul(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &pivot;
                d.col_sub_mul(j, t, &q);
                v.col_sub_mul(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Row t and column t are clear; enforce divisibility of the rest.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.row_sub_mul(t, i, &minus_one);
                    u.row_sub_mul(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].sign() == Sign::Minus {
            d.negate_col(t);
            v.negate_col(t);
        }
        factors.push(d[(t, t)].clone());
    }
    SmithDecomposition { u, d, v, invariant_factors: factors }
}

/// Exact inverse of a matrix with determinant ±1.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let det = m.determinant();
    if !det.abs().is_one() && m.rows() > 0 {
        return Err(LinalgError::NotUnimodular { det });
    }
    // U·M·V = I, hence M⁻¹ = V·U
    let s = snf(m);
    debug_assert!(s.d == IntMatrix::identity(m.rows()));
    Ok(s.v.mul(&s.u))
}
