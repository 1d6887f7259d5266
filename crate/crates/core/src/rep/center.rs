//! The central element `Z(x)`.

use crate::algebra::diffop::{rdet, NcRing};
use crate::algebra::matrix::{DenseMat, MatPoly};
use crate::algebra::poly::Poly;
use crate::algebra::scalar::{Rational, Ring};
use crate::rep::module::ModuleRep;
use crate::Result;

impl<R: Ring> NcRing for MatPoly<R> {
    fn nc_add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        MatPoly { dim: self.dim, coeffs: (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect() }
    }
    fn nc_sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        MatPoly { dim: self.dim, coeffs: (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect() }
    }
    fn nc_mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return MatPoly::zero(self.dim);
        }
        let mut out = vec![DenseMat::zeros(self.dim, self.dim); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        MatPoly { dim: self.dim, coeffs: out }
    }
}

/// `Z(x) = rdet [ (x + i − 1) δ_ij − e_ji ]` as a matrix polynomial in `x`.
pub fn central_z(m: &ModuleRep) -> Result<MatPoly<Rational>> {
    let n = m.n_gl;
    let d = m.dim;
    let entries: Vec<Vec<MatPoly<Rational>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        let c0 = &DenseMat::scalar(d, Rational::from_i64(i as i64)) - m.e(i, i);
                        MatPoly { dim: d, coeffs: vec![c0, DenseMat::identity(d)] }
                    } else {
                        MatPoly { dim: d, coeffs: vec![-m.e(j, i)] }
                    }
                })
                .collect()
        })
        .collect();
    rdet(&entries, &MatPoly { dim: d, coeffs: vec![DenseMat::identity(d)] })
}

/// `∏_i (x − λ_i + i − 1)` for a weight `λ`.
pub fn z_eigenvalue(weight: &[i64]) -> Poly<Rational> {
    weight.iter().enumerate().fold(Poly::one(), |acc, (i, &l)| {
        &acc * &Poly::linear_root(Rational::from_i64(l - i as i64))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;
    use crate::rep::module::{build_irrep, standard_rep, tensor_power};
    use crate::rep::partition::Partition;
    use crate::rep::singular::singular_space;

    #[test]
    fn rank_one_center() {
        let m = standard_rep(1);
        let z = central_z(&m).unwrap();
        // x − e_11 on C with e_11 = 1
        assert_eq!(z.coeff(0), DenseMat::scalar(1, rat(-1)));
        assert_eq!(z.coeff(1), DenseMat::identity(1));
    }

    #[test]
    fn eigenvalue_on_singular_vectors() {
        let m = tensor_power(2, 3).unwrap();
        let z = central_z(&m).unwrap();
        for c in z.coeffs.iter() {
            for e in &m.e_const {
                assert!(c.commutator(e).is_zero());
            }
        }
        let lam = Partition::new(&[2, 1], 2).unwrap();
        let s = singular_space(&m, &lam);
        let ev = z_eigenvalue(&lam.weight());
        assert_eq!(ev, Poly::new(vec![rat(0), rat(-2), rat(1)]));
        for k in 0..s.dim() {
            let v = s.basis.column(k);
            for (deg, c) in z.coeffs.iter().enumerate() {
                let lhs = c.mul_vec(&v);
                let rhs: Vec<Rational> = v.iter().map(|x| x * ev.coeff(deg)).collect();
                assert_eq!(lhs, rhs);
            }
        }
        let irr = build_irrep(&lam).unwrap();
        assert_eq!(central_z(&irr).unwrap().degree(), Some(2));
    }
}
