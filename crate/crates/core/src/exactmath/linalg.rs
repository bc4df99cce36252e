//! Exact Gaussian elimination.
//!
//! Pivots are taken as the first nonzero entry of each column (top-down),
//! so reduced row echelon forms and returned bases are reproducible.

use super::matrix::Matrix;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: matrix has {rows} rows but right-hand side has length {rhs}")]
    DimensionMismatch { rows: usize, rhs: usize },
}

/// The full solution set `{ particular + span(kernel) }` of a consistent system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }
}

/// Result of reducing a matrix in place.
pub struct Rref {
    pub reduced: Matrix,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(a: &Matrix) -> Rref {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = m[(r, c)].inv().expect("pivot is nonzero");
        for j in c..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<(usize, Scalar)> =
            (c..cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for (j, v) in &pivot_row {
                let delta = &f * v;
                m[(i, *j)] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: m, pivots }
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).rank()
}

/// Solves `A x = b` exactly. Returns `Ok(None)` when the system is inconsistent.
pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Result<Option<AffineSolution>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch { rows: a.rows(), rhs: b.len() });
    }
    let (rows, cols) = a.shape();
    let mut aug = Matrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let Rref { reduced, pivots } = rref(&aug);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut particular = vec![Scalar::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = reduced[(r, cols)].clone();
    }
    Ok(Some(AffineSolution { particular, kernel: kernel_from_rref(&reduced, &pivots, cols) }))
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&reduced[(r, f)];
            }
            v
        })
        .collect()
}

/// Basis of the null space of `a`.
pub fn kernel(a: &Matrix) -> Vec<Vec<Scalar>> {
    let Rref { reduced, pivots } = rref(a);
    kernel_from_rref(&reduced, &pivots, a.cols())
}

/// Two-sided inverse of a square matrix, `None` when singular or non-square.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.rows();
    if a.cols() != n {
        return None;
    }
    if n == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = Scalar::one();
    }
    let Rref { reduced, pivots } = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = reduced[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// Coordinates of `v` in the column span of `basis`, if it lies there.
pub fn coordinates(basis: &Matrix, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let sol = solve_affine(basis, v).ok()??;
    Some(sol.particular)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn identity_system() {
        let sol = solve_affine(&Matrix::identity(2), &ints(&[1, 0])).unwrap().unwrap();
        assert_eq!(sol.particular, ints(&[1, 0]));
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn inconsistent_system() {
        assert_eq!(solve_affine(&Matrix::zeros(1, 2), &ints(&[1])).unwrap(), None);
    }

    #[test]
    fn underdetermined_system() {
        // x + y = 2: row reduction by hand gives x = 2 - y
        let a = Matrix::from_i64_rows(&[&[1, 1]]);
        let sol = solve_affine(&a, &ints(&[2])).unwrap().unwrap();
        assert_eq!(sol.particular, ints(&[2, 0]));
        assert_eq!(sol.kernel, vec![ints(&[-1, 1])]);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            solve_affine(&Matrix::identity(2), &ints(&[1])),
            Err(LinalgError::DimensionMismatch { rows: 2, rhs: 1 })
        ));
    }

    #[test]
    fn kernels() {
        assert!(kernel(&Matrix::identity(3)).is_empty());
        assert_eq!(kernel(&Matrix::zeros(2, 2)).len(), 2);
        assert_eq!(kernel(&Matrix::from_i64_rows(&[&[1, -1]])), vec![ints(&[1, 1])]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inverse(&Matrix::from_i64_rows(&[&[1, 2], &[2, 4]])).is_none());
    }
}
