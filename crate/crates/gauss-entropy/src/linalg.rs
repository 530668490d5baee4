//! Small dense helpers shared by the state modules.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{CMat, Error, RMat, Result, C64};

/// Tolerance on occupation eigenvalues outside [0, 1] before they are
/// treated as a corrupted state instead of roundoff.
pub const OCCUPATION_TOL: f64 = 1e-8;

/// Binary entropy −x ln x − (1−x) ln(1−x), continuous at the end points.
pub fn binary_entropy(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let mut s = 0.0;
    if x > 0.0 {
        s -= x * x.ln();
    }
    if x < 1.0 {
        s -= (1.0 - x) * (-x).ln_1p();
    }
    s
}

/// Sum of binary entropies after checking every value lies in [0,1] up to
/// [`OCCUPATION_TOL`].
pub fn occupation_entropy(vals: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &g in vals {
        if !(-OCCUPATION_TOL..=1.0 + OCCUPATION_TOL).contains(&g) || g.is_nan() {
            return Err(Error::Unphysical(format!(
                "occupation eigenvalue {g} outside [0,1]"
            )));
        }
        s += binary_entropy(g);
    }
    Ok(s)
}

pub fn max_imag(a: &CMat) -> f64 {
    a.iter().fold(0.0f64, |m, z| m.max(z.im.abs()))
}

pub fn real_part(a: &CMat) -> RMat {
    a.map(|z| z.re)
}

pub fn imag_part(a: &CMat) -> RMat {
    a.map(|z| z.im)
}

pub fn from_parts(re: &RMat, im: &RMat) -> CMat {
    re.zip_map(im, C64::new)
}

/// Eigenvalues of a Hermitian matrix. Falls back to the real symmetric
/// solver when the imaginary part vanishes, which is several times faster.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    if max_imag(a) == 0.0 {
        return real_part(a).symmetric_eigenvalues().iter().copied().collect();
    }
    a.clone().symmetric_eigenvalues().iter().copied().collect()
}

/// Principal submatrix on the given index set (in the given order).
pub fn submatrix<T: nalgebra::Scalar + Copy>(a: &DMatrix<T>, idx: &[usize]) -> DMatrix<T> {
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| a[(idx[i], idx[j])])
}

/// Hermiticity defect max |A_ij − conj(A_ji)|.
pub fn hermitian_defect(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut m = 0.0f64;
    for i in 0..n {
        for j in 0..=i {
            m = m.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    m
}

/// Real symmetric eigendecomposition with eigenvalues ascending.
pub fn sym_eigen_sorted(a: RMat) -> (Vec<f64>, RMat) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), a);
    }
    let eig = SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = RMat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// log-determinant of a symmetric positive definite matrix.
pub fn spd_logdet(a: RMat) -> Result<f64> {
    let ch = a
        .cholesky()
        .ok_or_else(|| Error::Numerical("matrix is not positive definite".into()))?;
    Ok(2.0 * ch.l().diagonal().iter().map(|x| x.ln()).sum::<f64>())
}

/// Determinant of a small complex matrix by partial-pivot LU.
pub fn complex_det(a: &CMat) -> C64 {
    if a.nrows() == 0 {
        return C64::new(1.0, 0.0);
    }
    a.clone().lu().determinant()
}
