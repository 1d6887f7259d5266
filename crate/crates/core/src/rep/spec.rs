//! The shared problem record.

use crate::algebra::poly::Poly;
use crate::algebra::roots::integer_roots_exact;
use crate::algebra::scalar::{Rational, Ring};
use crate::rep::partition::Partition;
use crate::{Error, Result};

/// `(N, Λ, λ, b, n_s)` together with the derived coefficients `a`.
///
/// `lambda_list` is empty for Weyl-module problems, where only the
/// multiplicities `n_s` matter.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub n_gl: usize,
    pub lambda_list: Vec<Partition>,
    pub lambda: Partition,
    pub points: Vec<Rational>,
    pub mults: Vec<usize>,
    /// `a_1, ..., a_n` with `∏ (u − b_s)^{n_s} = u^n + Σ (−1)^j a_j u^{n−j}`.
    pub a: Vec<Rational>,
}

fn check_distinct(points: &[Rational]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::InvalidInput("repeated evaluation point".into()));
            }
        }
    }
    Ok(())
}

/// `a` coefficients of `∏ (u − b_s)^{n_s}`.
pub fn coefficients_from_points(points: &[Rational], mults: &[usize]) -> Vec<Rational> {
    let roots: Vec<(Rational, usize)> = points.iter().cloned().zip(mults.iter().copied()).collect();
    let q = Poly::from_roots(&roots);
    let n: usize = mults.iter().sum();
    (1..=n)
        .map(|j| {
            let c = q.coeff(n - j);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

impl ProblemSpec {
    /// Tensor product of irreducible evaluation modules `L_{λ^{(s)}}(b_s)`.
    pub fn new_tensor(
        n_gl: usize,
        lambda_list: Vec<Partition>,
        lambda: Partition,
        points: Vec<Rational>,
    ) -> Result<Self> {
        if lambda_list.len() != points.len() {
            return Err(Error::InvalidInput(format!(
                "{} partitions for {} points",
                lambda_list.len(),
                points.len()
            )));
        }
        if lambda_list.iter().chain(std::iter::once(&lambda)).any(|p| p.n_parts() != n_gl) {
            return Err(Error::InvalidInput("partition length differs from N".into()));
        }
        check_distinct(&points)?;
        let mults: Vec<usize> = lambda_list.iter().map(|p| p.size()).collect();
        let n: usize = mults.iter().sum();
        if n != lambda.size() {
            return Err(Error::InvalidInput(format!(
                "|λ| = {} but the factors have total size {}",
                lambda.size(),
                n
            )));
        }
        let a = coefficients_from_points(&points, &mults);
        Ok(ProblemSpec { n_gl, lambda_list, lambda, points, mults, a })
    }

    /// Tensor product of Weyl modules `W_{n_s}(b_s)`.
    pub fn new_weyl(n_gl: usize, lambda: Partition, points: Vec<Rational>, mults: Vec<usize>) -> Result<Self> {
        if points.len() != mults.len() {
            return Err(Error::InvalidInput("points and multiplicities differ in length".into()));
        }
        if lambda.n_parts() != n_gl {
            return Err(Error::InvalidInput("partition length differs from N".into()));
        }
        if mults.contains(&0) {
            return Err(Error::InvalidInput("zero multiplicity".into()));
        }
        check_distinct(&points)?;
        let n: usize = mults.iter().sum();
        if n != lambda.size() {
            return Err(Error::InvalidInput(format!(
                "|λ| = {} but multiplicities sum to {}",
                lambda.size(),
                n
            )));
        }
        let a = coefficients_from_points(&points, &mults);
        Ok(ProblemSpec { n_gl, lambda_list: Vec::new(), lambda, points, mults, a })
    }

    /// Weyl problem from the coefficients `a`; the roots of
    /// `u^n + Σ(−1)^j a_j u^{n−j}` must be integers so that the points are
    /// available exactly.
    pub fn weyl_from_coefficients(n_gl: usize, lambda: Partition, a: Vec<Rational>) -> Result<Self> {
        let n = a.len();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        for (j, aj) in a.iter().enumerate() {
            let j = j + 1;
            c[n - j] = if j % 2 == 0 { aj.clone() } else { -aj.clone() };
        }
        let (roots, rest) = integer_roots_exact(&Poly::new(c));
        if rest.degree().finite().unwrap_or(0) > 0 {
            return Err(Error::InvalidInput("coefficients without integer roots".into()));
        }
        let mut points: Vec<Rational> = Vec::new();
        let mut mults: Vec<usize> = Vec::new();
        for r in roots {
            let r = Rational::from_i64(r);
            match points.iter().position(|p| *p == r) {
                Some(i) => mults[i] += 1,
                None => {
                    points.push(r);
                    mults.push(1);
                }
            }
        }
        Self::new_weyl(n_gl, lambda, points, mults)
    }

    pub fn n(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn is_weyl(&self) -> bool {
        self.lambda_list.is_empty()
    }

    /// `∏ (u − b_s)^{n_s}`.
    pub fn q_poly(&self) -> Poly<Rational> {
        let roots: Vec<(Rational, usize)> =
            self.points.iter().cloned().zip(self.mults.iter().copied()).collect();
        Poly::from_roots(&roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn coefficients_match_products() {
        // (u-1)(u+1) = u^2 - 1: a1 = 0, a2 = -1
        assert_eq!(coefficients_from_points(&[rat(1), rat(-1)], &[1, 1]), vec![rat(0), rat(-1)]);
        let s = ProblemSpec::weyl_from_coefficients(2, Partition::new(&[2, 1], 2).unwrap(), vec![rat(0); 3]).unwrap();
        assert_eq!(s.points, vec![rat(0)]);
        assert_eq!(s.mults, vec![3]);
    }

    #[test]
    fn rejects_bad_specs() {
        let l = Partition::new(&[1, 1], 2).unwrap();
        let v = Partition::new(&[1], 2).unwrap();
        assert!(ProblemSpec::new_tensor(2, vec![v.clone(), v.clone()], l.clone(), vec![rat(1), rat(1)]).is_err());
        assert!(ProblemSpec::new_tensor(2, vec![v.clone()], l.clone(), vec![rat(1)]).is_err());
        assert!(ProblemSpec::new_tensor(2, vec![v.clone(), v], l, vec![rat(1), rat(-1)]).is_ok());
    }
}
