//! Dense complex matrix helpers shared by every other module.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`. Products above a small size
//! are routed through four real GEMMs so the optimized `f64` kernel does the
//! work instead of the generic complex loop.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

const SPLIT_THRESHOLD: usize = 48;

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

fn split(a: &CMatrix) -> (DMatrix<f64>, DMatrix<f64>) {
    (a.map(|z| z.re), a.map(|z| z.im))
}

/// Complex matrix product.
pub fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matrix product shape mismatch");
    if a.nrows().max(a.ncols()).max(b.ncols()) < SPLIT_THRESHOLD {
        return a * b;
    }
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    CMatrix::from_fn(re.nrows(), re.ncols(), |i, j| {
        Complex64::new(re[(i, j)], im[(i, j)])
    })
}

/// `a† b`
pub fn adjoint_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    mul(&a.adjoint(), b)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    mul(a, b) - mul(b, a)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    mul(a, b) + mul(b, a)
}

/// Kronecker product with the first factor varying slowest.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// `Tr(a b)` without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Frobenius inner product `Tr(a† b)`.
pub fn inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hermitian_residual(a: &CMatrix) -> f64 {
    frobenius(&(a - a.adjoint()))
}

pub fn symmetrize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

pub fn is_diagonal(a: &CMatrix, tol: f64) -> bool {
    (0..a.nrows()).all(|i| (0..a.ncols()).all(|j| i == j || a[(i, j)].norm() <= tol))
}

/// `‖a − (Tr a / dim)·I‖_F`, and the scalar itself.
pub fn scalar_part(a: &CMatrix) -> (f64, f64) {
    let dim = a.nrows();
    let c = trace(a).re / dim as f64;
    let mut off = a.clone();
    for i in 0..dim {
        off[(i, i)] -= Complex64::new(c, 0.0);
    }
    (c, frobenius(&off))
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn eigh(a: &CMatrix) -> Result<HermitianEigen> {
    let dim = a.nrows();
    if dim == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::try_new(symmetrize(a), f64::EPSILON, 10_000 * dim)
        .ok_or_else(|| Error::Numerical(format!("Hermitian eigensolver did not converge (dim {dim})")))?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Orthonormal basis for the column span of `a` (assumed full column rank).
pub fn orthonormalize(a: &CMatrix) -> CMatrix {
    // two passes of modified Gram-Schmidt
    let mut q = a.clone();
    for _ in 0..2 {
        for j in 0..q.ncols() {
            for k in 0..j {
                let proj: Complex64 = q
                    .column(k)
                    .iter()
                    .zip(q.column(j).iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let qk = q.column(k).clone_owned();
                let mut cj = q.column_mut(j);
                cj.axpy(-proj, &qk, ONE);
            }
            let norm = q.column(j).norm();
            if norm > 0.0 {
                q.column_mut(j).scale_mut(1.0 / norm);
            }
        }
    }
    q
}

/// Columns of `a` selected by `cols`, in order.
pub fn select_columns(a: &CMatrix, cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(a.nrows(), cols.len(), |r, c| a[(r, cols[c])])
}

/// Largest `|Im|` over all entries.
pub fn max_imag(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}
