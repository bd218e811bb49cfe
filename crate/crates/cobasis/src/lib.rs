//! Exact change of basis between finite polynomial bases.
//!
//! Everything here is computed over arbitrary-precision rationals: basis
//! polynomials (monomial, Bernstein, Zernike radial, classical orthogonal
//! families), the connection-coefficient functions that relate them, and the
//! triangular / alternating / band change-of-basis matrices those functions
//! induce. Matrices can be composed, inverted, truncated, alternated and
//! superposed, and every formula-built matrix can be cross-checked against a
//! brute-force oracle that expands basis polynomials and solves the linear
//! system directly.

// dense exact linear algebra reads most clearly with explicit index loops
#![allow(clippy::needless_range_loop)]

pub mod case_studies;
pub mod exact;
pub mod families;
pub mod fixtures;
pub mod matrices;
pub mod oracle;
pub mod registry;
pub mod transforms;

pub use exact::{Parity, Polynomial, Rational};
pub use families::{CoeffFn, Direction, Family};
pub use matrices::{CobMatrix, MatrixKind, Orientation, ParityKind, Shape};
pub use registry::{BasisId, BasisKind, BasisSpec, CoordVector, Registry};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("truncation window [{l}, {u}] does not meet the support [{m}, {n}]")]
    EmptyTruncation { u: i64, l: i64, n: i64, m: i64 },
    #[error("pochhammer(1, -1) divides by zero")]
    PochhammerPole,
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("index {k} outside the valid domain 0..={max} of {what}")]
    IndexOutOfDomain { what: String, k: i64, max: i64 },
    #[error("invalid degree window [{m}, {n}] (step {d})")]
    InvalidWindow { n: i64, m: i64, d: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible bases: {0}")]
    BasisMismatch(String),
    #[error("zero entry on the main diagonal at index {0}")]
    ZeroDiagonal(usize),
    #[error("band inverse precondition failed: {0}")]
    BandPrecondition(String),
    #[error("matrix truncation (k1={k1}, k2={k2}) exhausts a {dim}x{dim} matrix")]
    WindowExhausted { k1: usize, k2: usize, dim: usize },
    #[error("matrix shape {0:?} does not support this operation")]
    ShapeUnsupported(matrices::Shape),
    #[error("basis registration failed: {0}")]
    InvalidBasis(String),
    #[error("polynomial lies outside the span of the target basis: {0}")]
    OutOfSpan(String),
    #[error("inverse coefficient function does not invert the matrix (first failure at ({0}, {1}))")]
    InverseMismatch(usize, usize),
    #[error("singular linear system while solving for basis coordinates")]
    SingularSystem,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
pub(crate) mod test_oracle {
    //! Tiny self-contained matrix helpers used by unit tests as an
    //! independent route: plain `Vec<Vec<Rational>>`, no shared code with
    //! `matrices`.

    use crate::exact::Rational;
    use num_traits::{One, Zero};

    /// Inverse by Gauss-Jordan elimination; panics on singular input.
    pub fn invert(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let n = a.len();
        let mut aug: Vec<Vec<Rational>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .expect("singular matrix in test oracle");
            aug.swap(col, pivot);
            let p = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..2 * n {
                        let sub = &f * &aug[col][c];
                        aug[r][c] = &aug[r][c] - &sub;
                    }
                }
            }
        }
        aug.into_iter().map(|row| row[n..].to_vec()).collect()
    }
}
