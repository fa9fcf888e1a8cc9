//! Small exact matrices over the fraction field: determinant and inverse by
//! Gauss-Jordan elimination with first-nonzero pivoting. Sizes stay tiny
//! (chart dimension plus one), so no fraction-free tricks are needed.

use thiserror::Error;

use crate::scalar::{ExactScalar, GaussianRational};

pub type ScalarMatrix = Vec<Vec<ExactScalar>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square")]
    NotSquare,
}

pub fn identity(n: usize) -> ScalarMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ExactScalar::one() } else { ExactScalar::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = ExactScalar::zero();
                    for l in 0..k {
                        acc = &acc + &(&a[i][l] * &b[l][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn check_square(m: &ScalarMatrix) -> Result<usize, LinalgError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(LinalgError::NotSquare);
    }
    Ok(n)
}

pub fn mat_det(m: &ScalarMatrix) -> Result<ExactScalar, LinalgError> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return Ok(ExactScalar::zero()),
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = det.scale(&GaussianRational::from_int(-1));
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inv().expect("pivot nonzero");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
        }
    }
    Ok(det)
}

pub fn mat_inv(m: &ScalarMatrix) -> Result<ScalarMatrix, LinalgError> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return Err(LinalgError::Singular),
        };
        a.swap(pivot_row, col);
        inv.swap(pivot_row, col);
        let pivot_inv = a[col][col].inv().expect("pivot nonzero");
        for c in 0..n {
            a[col][c] = &a[col][c] * &pivot_inv;
            inv[col][c] = &inv[col][c] * &pivot_inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let da = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &da;
                let di = &factor * &inv[col][c];
                inv[r][c] = &inv[r][c] - &di;
            }
        }
    }
    Ok(inv)
}

/// Determinant of a numeric matrix (evaluated chart data at a point).
pub fn gauss_det(m: &[Vec<GaussianRational>]) -> GaussianRational {
    let n = m.len();
    let scalar: ScalarMatrix = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter().map(|c| ExactScalar::from_constant(c.clone())).collect()
        })
        .collect();
    mat_det(&scalar)
        .expect("square by construction")
        .as_constant()
        .expect("constant matrix has constant determinant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Var;
    use crate::scalar::Poly;

    #[test]
    fn inverse_of_symbolic_matrix() {
        let z = ExactScalar::var(Var::hol(1));
        let m = vec![
            vec![ExactScalar::one(), z.clone()],
            vec![ExactScalar::zero(), ExactScalar::one()],
        ];
        let inv = mat_inv(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(mat_mul(&inv, &m), identity(2));
    }

    #[test]
    fn det_and_singularity() {
        let z = ExactScalar::var(Var::hol(1));
        let m = vec![
            vec![z.clone(), z.clone()],
            vec![ExactScalar::one(), ExactScalar::one()],
        ];
        assert_eq!(mat_det(&m).unwrap(), ExactScalar::zero());
        assert_eq!(mat_inv(&m).unwrap_err(), LinalgError::Singular);

        let psi = ExactScalar::from_poly(
            &(&Poly::var(Var::hol(1)) * &Poly::var(Var::anti(1))) - &Poly::one(),
        );
        let m = vec![
            vec![ExactScalar::one(), psi.clone()],
            vec![psi.clone(), ExactScalar::one()],
        ];
        let det = mat_det(&m).unwrap();
        assert_eq!(det, &ExactScalar::one() - &(&psi * &psi));
    }
}
