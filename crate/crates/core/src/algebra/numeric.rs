//! Floating-point linear algebra backed by nalgebra.

use nalgebra::DMatrix;

use super::matrix::DenseMat;
use super::scalar::Complex;

fn to_na(m: &DenseMat<Complex>, min_rows: usize) -> DMatrix<Complex> {
    let rows = m.rows().max(min_rows);
    DMatrix::from_fn(rows, m.cols(), |i, j| {
        if i < m.rows() {
            *m.get(i, j)
        } else {
            Complex::new(0.0, 0.0)
        }
    })
}

/// Singular values in decreasing order.
pub fn singular_values(m: &DenseMat<Complex>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let svd = to_na(m, 0).svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Orthonormal basis of the right null space: right singular vectors whose
/// singular value is at most `tol * max(σ_max, 1)`.
pub fn svd_kernel(m: &DenseMat<Complex>, tol: f64) -> Vec<Vec<Complex>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        return (0..n)
            .map(|j| (0..n).map(|i| Complex::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
    }
    // pad with zero rows so the decomposition returns a full V
    let a = to_na(m, n);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = tol * smax.max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cut)
        .map(|(k, _)| (0..n).map(|j| vt[(k, j)].conj()).collect())
        .collect()
}

/// Numerical rank with the same threshold as [`svd_kernel`].
pub fn svd_rank(m: &DenseMat<Complex>, tol: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&x| x > tol * smax.max(1.0)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let m = DenseMat::from_fn(1, 3, |_, j| Complex::new((j + 1) as f64, 0.0));
        let k = svd_kernel(&m, 1e-10);
        assert_eq!(k.len(), 2);
        for v in &k {
            let r = m.mul_vec(v);
            assert!(r[0].norm() < 1e-12);
        }
        assert_eq!(svd_rank(&m, 1e-10), 1);
    }
}
