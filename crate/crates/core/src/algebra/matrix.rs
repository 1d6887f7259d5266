//! Dense matrices over a ring, with field-only elimination routines.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::{Field, Ring};
use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMat<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> DenseMat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMat {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn scalar(n: usize, c: R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(DenseMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<R>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> DenseMat<S> {
        DenseMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).clone() * o.get(i % o.rows, j % o.cols).clone()
        })
    }

    /// Sub-matrix with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Characteristic polynomial `det(x I - A)` by Berkowitz's division-free
    /// algorithm, so it works over any commutative ring.
    pub fn charpoly(&self) -> Poly<R> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        // Coefficient vector, highest degree first, of det(xI - A) for the
        // leading r x r block, built up one row/column at a time.
        let mut vect: Vec<R> = vec![R::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            // A = [[M, C],[R, a]] with M the leading r x r block.
            let a = self.get(r, r).clone();
            let col: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let rowv: Vec<R> = (0..r).map(|j| self.get(r, j).clone()).collect();
            // Toeplitz column: 1, -a, -R C, -R M C, -R M^2 C, ...
            let mut t = vec![R::one(), -a];
            let mut mc = col.clone();
            for _ in 0..r {
                let dot = rowv
                    .iter()
                    .zip(&mc)
                    .fold(R::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                t.push(-dot);
                mc = (0..r)
                    .map(|i| {
                        (0..r).fold(R::zero(), |acc, k| acc + self.get(i, k).clone() * mc[k].clone())
                    })
                    .collect();
            }
            let mut next = vec![R::zero(); r + 2];
            for (i, nx) in next.iter_mut().enumerate() {
                for (j, v) in vect.iter().enumerate() {
                    if i >= j && i - j < t.len() {
                        *nx = nx.clone() + t[i - j].clone() * v.clone();
                    }
                }
            }
            vect = next;
        }
        vect.reverse();
        Poly::new(vect)
    }

    /// Determinant via the characteristic polynomial (ring-safe).
    pub fn det_ring(&self) -> R {
        let n = self.rows;
        let c = self.charpoly().coeff(0);
        if n % 2 == 0 {
            c
        } else {
            -c
        }
    }
}

/// Result of a row reduction: reduced matrix, pivot columns and rank.
#[derive(Clone, Debug)]
pub struct Rref<K> {
    pub matrix: DenseMat<K>,
    pub pivots: Vec<usize>,
}

impl<K: Field> DenseMat<K> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the floating image.
    pub fn norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.magnitude().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Reduced row echelon form. Exact fields pivot on the first nonzero
    /// entry; floating fields use partial pivoting and treat entries below
    /// `tol * max|A|` as zero.
    pub fn rref(&self, tol: f64) -> Rref<K> {
        let mut m = self.clone();
        let scale = self.max_abs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pick = if K::EXACT {
                (r..m.rows).find(|&i| !m.get(i, c).is_zero())
            } else {
                let best = (r..m.rows).max_by(|&a, &b| {
                    m.get(a, c)
                        .magnitude()
                        .partial_cmp(&m.get(b, c).magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
                best.filter(|&i| !m.get(i, c).is_negligible(scale, tol))
            };
            let Some(p) = pick else {
                if !K::EXACT {
                    for i in r..m.rows {
                        m.set(i, c, K::zero());
                    }
                }
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
                m.set(i, c, K::zero());
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).pivots.len()
    }

    /// Basis of the right null space, one vector per free column, with the
    /// free coordinate equal to 1.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<K>> {
        let Rref { matrix, pivots } = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![K::zero(); self.cols];
                v[f] = K::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[K], tol: f64) -> Result<Vec<K>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::ShapeMismatch("solve".into()));
        }
        let n = self.rows;
        let aug = DenseMat::from_fn(n, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let red = aug.rref(tol);
        if red.pivots.len() != n || red.pivots.iter().any(|&p| p >= n) {
            return Err(Error::Numerical("singular linear system".into()));
        }
        Ok((0..n).map(|i| red.matrix.get(i, n).clone()).collect())
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = DenseMat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                K::one()
            } else {
                K::zero()
            }
        });
        let red = aug.rref(tol);
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return Err(Error::Numerical("singular matrix".into()));
        }
        Ok(DenseMat::from_fn(n, n, |i, j| red.matrix.get(i, n + j).clone()))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> K {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = K::one();
        for c in 0..n {
            let p = if K::EXACT {
                (c..n).find(|&i| !m.get(i, c).is_zero())
            } else {
                (c..n).max_by(|&a, &b| {
                    m.get(a, c)
                        .magnitude()
                        .partial_cmp(&m.get(b, c).magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
            };
            let Some(p) = p else { return K::zero() };
            if m.get(p, c).is_zero() {
                return K::zero();
            }
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det * piv.clone();
            let inv = piv.inv();
            for i in c + 1..n {
                let f = m.get(i, c).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn to_complex(&self) -> DenseMat<super::scalar::Complex> {
        self.map(|x| x.to_complex())
    }
}

impl<'a, R: Ring> Add<&'a DenseMat<R>> for &'a DenseMat<R> {
    type Output = DenseMat<R>;
    fn add(self, o: &DenseMat<R>) -> DenseMat<R> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        DenseMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, R: Ring> Sub<&'a DenseMat<R>> for &'a DenseMat<R> {
    type Output = DenseMat<R>;
    fn sub(self, o: &DenseMat<R>) -> DenseMat<R> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        DenseMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<'a, R: Ring> Mul<&'a DenseMat<R>> for &'a DenseMat<R> {
    type Output = DenseMat<R>;
    fn mul(self, o: &DenseMat<R>) -> DenseMat<R> {
        self.checked_mul(o).expect("shape mismatch in mul")
    }
}

impl<R: Ring> Neg for &DenseMat<R> {
    type Output = DenseMat<R>;
    fn neg(self) -> DenseMat<R> {
        self.map(|x| -x.clone())
    }
}

impl<R: fmt::Debug> fmt::Debug for DenseMat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Polynomial in `u` with matrix coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly<R> {
    pub dim: usize,
    pub coeffs: Vec<DenseMat<R>>,
}

impl<R: Ring> MatPoly<R> {
    pub fn zero(dim: usize) -> Self {
        MatPoly { dim, coeffs: Vec::new() }
    }

    /// Splits a matrix of polynomials into its coefficient matrices.
    pub fn from_poly_matrix(m: &DenseMat<Poly<R>>) -> Self {
        let deg = m
            .entries()
            .iter()
            .map(|p| p.coeffs().len())
            .max()
            .unwrap_or(0);
        let coeffs = (0..deg)
            .map(|k| m.map(|p| p.coeff(k)))
            .collect();
        MatPoly { dim: m.rows(), coeffs }
    }

    pub fn coeff(&self, k: usize) -> DenseMat<R> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| DenseMat::zeros(self.dim, self.dim))
    }

    /// Highest `k` with a nonzero coefficient matrix.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|m| !m.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, Complex, Rational};

    fn m(rows: &[&[i64]]) -> DenseMat<Rational> {
        DenseMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn berkowitz_matches_known_charpoly() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let cp = a.charpoly();
        // det(xI - A) = x^3 - 9x^2 + 24x - 18
        assert_eq!(cp, Poly::new(vec![rat(-18), rat(24), rat(-9), rat(1)]));
        assert_eq!(a.det(), rat(18));
        assert_eq!(a.det_ring(), rat(18));
    }

    #[test]
    fn nullspace_and_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace(0.0);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|x| Ring::is_zero(x)));
        }
        let b = m(&[&[2, 1], &[1, 1]]);
        let bi = b.inverse(0.0).unwrap();
        assert_eq!(&b * &bi, DenseMat::identity(2));
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let a = DenseMat::from_fn(2, 2, |i, j| Complex::new((i + 1) as f64 * (j + 1) as f64, 0.0));
        assert_eq!(a.rank(1e-10), 1);
    }

    #[test]
    fn kron_shape() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let k = a.kron(&DenseMat::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.get(0, 2), rat(1));
    }
}
