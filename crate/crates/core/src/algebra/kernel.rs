//! Polynomial solutions of linear differential operators.

use super::diffop::DiffOp;
use super::matrix::DenseMat;
use super::numeric::svd_kernel;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::scalar::{Field, Ring};
use crate::Result;

/// Common denominator of the coefficients: an lcm in exact mode; in float
/// mode equal denominators are shared and distinct ones multiplied.
pub fn common_denominator<K: Field>(coeffs: &[RatFunc<K>], tol: f64) -> Poly<K> {
    let mut den = Poly::one();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let d = c.denom();
        if K::EXACT {
            let g = den.gcd(d);
            den = &den * &d.div_rem(&g).expect("nonzero").0;
        } else if den.div_exact(d, tol).is_err() {
            den = &den * d;
        }
    }
    den
}

/// Multiplies the operator through by a common denominator, returning the
/// polynomial coefficients lowest order first.
pub fn clear_denominators<K: Field>(d: &DiffOp<RatFunc<K>>, tol: f64) -> Result<Vec<Poly<K>>> {
    let den = common_denominator(d.coeffs(), tol);
    d.coeffs()
        .iter()
        .map(|c| c.numerator_over(&den, tol))
        .collect()
}

/// Basis of polynomial solutions of degree `< degree_bound` of the monic
/// operator `d`, in echelon form: sorted by decreasing degree, monic, and
/// with zero coefficient at every other basis element's leading degree.
pub fn polynomial_kernel<K: Field>(
    d: &DiffOp<RatFunc<K>>,
    degree_bound: usize,
    tol: f64,
) -> Result<Vec<Poly<K>>> {
    let cleared = clear_denominators(d, tol)?;
    polynomial_kernel_cleared(&cleared, degree_bound, tol)
}

/// Same as [`polynomial_kernel`] for an operator already given with
/// polynomial coefficients `Σ G_k ∂^k` (lowest order first).
pub fn polynomial_kernel_cleared<K: Field>(
    coeffs: &[Poly<K>],
    degree_bound: usize,
    tol: f64,
) -> Result<Vec<Poly<K>>> {
    if degree_bound == 0 {
        return Ok(Vec::new());
    }
    let op = DiffOp::new(coeffs.to_vec());
    let images: Vec<Poly<K>> = (0..degree_bound)
        .map(|m| op.apply(&Poly::monomial(K::one(), m)))
        .collect();
    let rows = images
        .iter()
        .map(|p| p.coeffs().len())
        .max()
        .unwrap_or(0);
    let a = DenseMat::from_fn(rows, degree_bound, |i, m| images[m].coeff(i));
    let kernel: Vec<Vec<K>> = if K::EXACT {
        a.nullspace(0.0)
    } else {
        // Rescale columns so that all monomials carry comparable weight. The
        // scale of u^m is the size of its image before cancellation, so
        // that an image that cancels to noise stays small.
        let sizes: Vec<f64> = coeffs.iter().map(|g| g.coeffs().iter().map(|c| c.magnitude()).fold(0.0, f64::max)).collect();
        let col_scale: Vec<f64> = (0..degree_bound)
            .map(|m| {
                let mut falling = 1.0;
                let mut s: f64 = 0.0;
                for (k, gk) in sizes.iter().enumerate() {
                    if k > m {
                        break;
                    }
                    s = s.max(gk * falling);
                    falling *= (m - k) as f64;
                }
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        let ac = DenseMat::from_fn(rows, degree_bound, |i, m| {
            a.get(i, m).to_complex() / col_scale[m]
        });
        svd_kernel(&ac, tol)
            .into_iter()
            .map(|v| {
                v.iter()
                    .zip(&col_scale)
                    .map(|(x, s)| K::from_complex(x / s))
                    .collect()
            })
            .collect()
    };
    Ok(echelon_by_degree(&kernel, degree_bound, tol))
}

/// Reduced echelon form of a set of coefficient vectors, pivoting on the
/// highest degree. Returns polynomials sorted by decreasing degree.
pub fn echelon_by_degree<K: Field>(vectors: &[Vec<K>], len: usize, tol: f64) -> Vec<Poly<K>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // Reverse columns so that RREF pivots on the highest degree first.
    let m = DenseMat::from_fn(vectors.len(), len, |i, j| vectors[i][len - 1 - j].clone());
    let red = m.rref(tol);
    (0..red.pivots.len())
        .map(|r| {
            let mut c: Vec<K> = (0..len).map(|j| red.matrix.get(r, len - 1 - j).clone()).collect();
            if !K::EXACT {
                let scale = 1.0;
                for x in c.iter_mut() {
                    if x.is_negligible(scale, tol) {
                        *x = K::zero();
                    }
                }
            }
            Poly::new(c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, Complex, Rational};

    fn p(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn second_derivative_kernel() {
        let d = DiffOp::<RatFunc<Rational>>::d(2);
        let k = polynomial_kernel(&d, 4, 0.0).unwrap();
        assert_eq!(k, vec![p(&[0, 1]), p(&[1])]);
    }

    #[test]
    fn kernel_of_wronskian_operator() {
        // ∂² − 2u/(u²−1) ∂ + 2/(u²−1), kernel {u² + 1, u}
        let den = p(&[-1, 0, 1]);
        let d = DiffOp::new(vec![
            RatFunc::new(p(&[2]), den.clone()).unwrap(),
            RatFunc::new(p(&[0, -2]), den).unwrap(),
            RatFunc::one(),
        ]);
        let k = polynomial_kernel(&d, 4, 0.0).unwrap();
        assert_eq!(k, vec![p(&[1, 0, 1]), p(&[0, 1])]);
        let kf = polynomial_kernel(&d.map(|c| {
            RatFunc::new(c.numer().to_complex(), c.denom().to_complex()).unwrap()
        }), 4, 1e-10)
        .unwrap();
        assert_eq!(kf.len(), 2);
        assert!((kf[0].coeff(0) - Complex::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn exponential_has_no_polynomial_solution() {
        let d = DiffOp::new(vec![RatFunc::<Rational>::from_i64(-1), RatFunc::one()]);
        assert!(polynomial_kernel(&d, 10, 0.0).unwrap().is_empty());
    }
}
