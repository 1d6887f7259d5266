//! Ordered differential operators `Σ c_k ∂^k` and row determinants.

use std::collections::HashMap;

use super::matrix::DenseMat;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::scalar::{binomial, Field, Ring};
use crate::{Error, Result};

/// Coefficient rings closed under `d/du`.
pub trait Differential: Ring {
    fn deriv(&self) -> Self;
}

impl<R: Ring> Differential for Poly<R> {
    fn deriv(&self) -> Self {
        self.derivative()
    }
}

impl<K: Field> Differential for RatFunc<K> {
    fn deriv(&self) -> Self {
        self.derivative()
    }
}

/// Minimal interface for (possibly noncommutative) ring elements fed to
/// [`rdet`].
pub trait NcRing: Clone {
    fn nc_add(&self, o: &Self) -> Self;
    fn nc_sub(&self, o: &Self) -> Self;
    fn nc_mul(&self, o: &Self) -> Self;
}

impl<T: Ring> NcRing for T {
    fn nc_add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn nc_sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn nc_mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
}

/// Row determinant `Σ_σ sgn(σ) a_{1σ(1)} a_{2σ(2)} ... a_{Nσ(N)}`, products
/// taken in row order. Evaluated by expansion along the first row with
/// memoisation over column subsets, so the cost is `O(N 2^N)` products.
pub fn rdet<T: NcRing>(m: &[Vec<T>], one: &T) -> Result<T> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("row determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(one.clone());
    }
    if n > 20 {
        return Err(Error::GuardExceeded("row determinant size".into()));
    }
    let mut memo: HashMap<u32, T> = HashMap::new();
    Ok(rdet_rec(m, 0, (1u32 << n) - 1, one, &mut memo))
}

fn rdet_rec<T: NcRing>(m: &[Vec<T>], row: usize, cols: u32, one: &T, memo: &mut HashMap<u32, T>) -> T {
    if cols == 0 {
        return one.clone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc: Option<T> = None;
    let mut pos = 0;
    for j in 0..m.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let minor = rdet_rec(m, row + 1, cols & !(1 << j), one, memo);
        let term = m[row][j].nc_mul(&minor);
        acc = Some(match acc {
            // the first column in the set always has even position
            None => term,
            Some(a) if pos % 2 == 0 => a.nc_add(&term),
            Some(a) => a.nc_sub(&term),
        });
        pos += 1;
    }
    let v = acc.expect("nonempty column set");
    memo.insert(cols, v.clone());
    v
}

/// Scalar differential operator `Σ_k c_k ∂^k`, coefficients lowest order first.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<C> {
    coeffs: Vec<C>,
}

impl<C: Differential> DiffOp<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    /// `∂^k`.
    pub fn d(k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = C::one();
        DiffOp::new(v)
    }

    /// Multiplication operator by `c`.
    pub fn scalar(c: C) -> Self {
        DiffOp::new(vec![c])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Order, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Applies the operator to a function: `Σ c_k f^{(k)}`.
    pub fn apply(&self, f: &C) -> C {
        let mut acc = C::zero();
        let mut der = f.clone();
        for c in &self.coeffs {
            acc = acc + c.clone() * der.clone();
            der = der.deriv();
        }
        acc
    }

    /// Left multiplication of every coefficient by `c`.
    pub fn scale_left(&self, c: &C) -> Self {
        DiffOp::new(self.coeffs.iter().map(|x| c.clone() * x.clone()).collect())
    }

    pub fn map<D: Differential>(&self, f: impl Fn(&C) -> D) -> DiffOp<D> {
        DiffOp::new(self.coeffs.iter().map(f).collect())
    }
}

impl<K: Field> DiffOp<RatFunc<K>> {
    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lc = self.coeffs.last().ok_or(Error::EmptyInput)?.clone();
        let inv = RatFunc::one() / lc;
        Ok(self.scale_left(&inv))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == RatFunc::one())
    }
}

impl<C: Differential> NcRing for DiffOp<C> {
    fn nc_add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        DiffOp::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    fn nc_sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        DiffOp::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    /// `(a ∂^i)(b ∂^j) = a Σ_k C(i,k) b^{(k)} ∂^{i-k+j}`.
    fn nc_mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return DiffOp::new(Vec::new());
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        // derivatives of the right factor's coefficients, cached
        let mut ders: Vec<Vec<C>> = vec![o.coeffs.clone()];
        for i in 1..self.coeffs.len() {
            let next: Vec<C> = ders[i - 1].iter().map(|c| c.deriv()).collect();
            ders.push(next);
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for k in 0..=i {
                let bin: C = binomial(i, k);
                for (j, bk) in ders[k].iter().enumerate() {
                    if bk.is_zero() {
                        continue;
                    }
                    let idx = i - k + j;
                    out[idx] = out[idx].clone() + a.clone() * bin.clone() * bk.clone();
                }
            }
        }
        DiffOp::new(out)
    }
}

/// Operator `Σ_k C_k ∂^k` with square matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MatDiffOp<C> {
    dim: usize,
    coeffs: Vec<DenseMat<C>>,
}

impl<C: Differential> MatDiffOp<C> {
    pub fn new(dim: usize, mut coeffs: Vec<DenseMat<C>>) -> Result<Self> {
        if coeffs.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::ShapeMismatch("matrix operator coefficient".into()));
        }
        while coeffs.last().is_some_and(|m| m.is_zero()) {
            coeffs.pop();
        }
        Ok(MatDiffOp { dim, coeffs })
    }

    /// `∂^k · Id`.
    pub fn d(dim: usize, k: usize) -> Self {
        let mut v = vec![DenseMat::zeros(dim, dim); k + 1];
        v[k] = DenseMat::identity(dim);
        MatDiffOp { dim, coeffs: v }
    }

    pub fn identity(dim: usize) -> Self {
        Self::d(dim, 0)
    }

    pub fn multiplication(m: DenseMat<C>) -> Result<Self> {
        let dim = m.rows();
        Self::new(dim, vec![m])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[DenseMat<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> DenseMat<C> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| DenseMat::zeros(self.dim, self.dim))
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.dim, (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.dim, (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(self.dim, Vec::new());
        }
        let mut out = vec![DenseMat::zeros(self.dim, self.dim); self.coeffs.len() + o.coeffs.len() - 1];
        let mut ders: Vec<Vec<DenseMat<C>>> = vec![o.coeffs.clone()];
        for i in 1..self.coeffs.len() {
            let next = ders[i - 1].iter().map(|m| m.map(|c| c.deriv())).collect();
            ders.push(next);
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for k in 0..=i {
                let bin: C = binomial(i, k);
                for (j, bk) in ders[k].iter().enumerate() {
                    if bk.is_zero() {
                        continue;
                    }
                    let idx = i - k + j;
                    out[idx] = &out[idx] + &(a * bk).scale(&bin);
                }
            }
        }
        Self::new(self.dim, out)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.dim, o.dim)));
        }
        Ok(())
    }
}

impl<C: Differential> NcRing for MatDiffOp<C> {
    fn nc_add(&self, o: &Self) -> Self {
        self.try_add(o).expect("shape mismatch")
    }
    fn nc_sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("shape mismatch")
    }
    fn nc_mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("shape mismatch")
    }
}

impl<R: Ring> NcRing for DenseMat<R> {
    fn nc_add(&self, o: &Self) -> Self {
        self + o
    }
    fn nc_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn nc_mul(&self, o: &Self) -> Self {
        self * o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, Rational};

    type R = RatFunc<Rational>;

    fn poly(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&x| rat(x)).collect())
    }

    fn rf(v: &[i64]) -> R {
        RatFunc::from_poly(poly(v))
    }

    #[test]
    fn leibniz_rule() {
        // ∂ · u = u ∂ + 1
        let prod = DiffOp::<R>::d(1).nc_mul(&DiffOp::scalar(rf(&[0, 1])));
        assert_eq!(prod, DiffOp::new(vec![rf(&[1]), rf(&[0, 1])]));
        assert_eq!(DiffOp::<R>::d(2).nc_mul(&DiffOp::scalar(rf(&[1]))), DiffOp::d(2));
    }

    #[test]
    fn product_annihilates_constant() {
        let b = rat(3);
        let lhs = DiffOp::new(vec![-RatFunc::pole(rat(1), b.clone(), 1), R::one()]);
        let rhs = DiffOp::scalar(RatFunc::from_poly(Poly::linear_root(b)));
        let prod = lhs.nc_mul(&rhs);
        assert!(prod.apply(&R::one()).is_zero());
    }

    #[test]
    fn rdet_small_cases() {
        let one = rat(1);
        assert_eq!(rdet(&[vec![rat(5)]], &one).unwrap(), rat(5));
        let m = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        assert_eq!(rdet(&m, &one).unwrap(), rat(-2));
        let m3 = vec![
            vec![rat(2), rat(0), rat(1)],
            vec![rat(1), rat(3), rat(2)],
            vec![rat(1), rat(1), rat(2)],
        ];
        assert_eq!(rdet(&m3, &one).unwrap(), rat(6));
        assert!(rdet(&[vec![rat(1), rat(2)]], &one).is_err());
    }

    #[test]
    fn rdet_respects_row_order() {
        // [[∂, u], [1, ∂]] -> ∂·∂ - u·1 = ∂² - u, while the column order would
        // give ∂² - u as well; use [[∂, 1], [u, ∂]]: ∂∂ - 1·u = ∂² - u, and
        // [[u, ∂],[∂, 1]]: u·1 - ∂·∂.
        let one = DiffOp::<R>::scalar(R::one());
        let d = DiffOp::<R>::d(1);
        let u = DiffOp::scalar(rf(&[0, 1]));
        let m = vec![vec![d.clone(), u.clone()], vec![d.clone(), one.clone()]];
        // ∂·1 - u·∂
        let expect = d.nc_sub(&u.nc_mul(&d));
        assert_eq!(rdet(&m, &one).unwrap(), expect);
    }

    #[test]
    fn matrix_operator_shape_check() {
        let a = MatDiffOp::<R>::d(2, 1);
        let b = MatDiffOp::<R>::d(3, 1);
        assert!(a.try_mul(&b).is_err());
        let c = a.try_mul(&a).unwrap();
        assert_eq!(c.order(), Some(2));
    }
}
