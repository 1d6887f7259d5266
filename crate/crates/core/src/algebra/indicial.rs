//! Indicial polynomials at infinity and at finite points.

use super::diffop::DiffOp;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::roots::{complex_roots, integer_roots_exact};
use super::scalar::{Field, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Location<K> {
    Infinity,
    Point(K),
}

/// Polynomial in the formal variable `α` attached to a location.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicialPolynomial<K> {
    pub location: Location<K>,
    pub poly: Poly<K>,
}

/// `∏_{j=0}^{k-1} (α - j)` as a polynomial in α.
pub fn falling_poly<K: Field>(k: usize) -> Poly<K> {
    (0..k).fold(Poly::one(), |acc, j| &acc * &Poly::linear_root(K::from_i64(j as i64)))
}

/// `χ(α) = Σ_i F_ii ∏_{j<N-i}(α - j)` where `F_i` is the coefficient of
/// `∂^{N-i}` and `F_ii` its `u^{-i}` coefficient at infinity.
pub fn indicial_at_infinity<K: Field>(d: &DiffOp<RatFunc<K>>) -> Result<IndicialPolynomial<K>> {
    let n = d.order().ok_or(Error::EmptyInput)?;
    let d = if d.is_monic() { d.clone() } else { d.monic()? };
    let mut chi = Poly::zero();
    for i in 0..=n {
        let f = d.coeff(n - i);
        let series = f.laurent_at_infinity(i)?;
        // Coefficients of u^{-j} with j < i must vanish for a regular singularity.
        let scale = f.max_abs();
        if series[..i].iter().any(|c| !c.is_negligible(scale, 1e-9)) {
            return Err(Error::InvalidInput(
                "coefficient grows too fast at infinity for a regular singularity".into(),
            ));
        }
        chi = &chi + &falling_poly::<K>(n - i).scale(&series[i]);
    }
    Ok(IndicialPolynomial {
        location: Location::Infinity,
        poly: chi,
    })
}

/// Indicial polynomial of a cleared operator `Σ G_i ∂^{N-i}` (given lowest
/// order first) at `b`, where `G_0` vanishes to order exactly `n_s`:
/// `χ_s(α) = Σ_i G_{i, n_s - i} ∏_{j<N-i}(α - j)`.
pub fn indicial_at_point<K: Field>(
    cleared: &DiffOp<Poly<K>>,
    b: &K,
    n_s: usize,
    tol: f64,
) -> Result<IndicialPolynomial<K>> {
    let n = cleared.order().ok_or(Error::EmptyInput)?;
    let mut chi = Poly::zero();
    for i in 0..=n {
        let g = cleared.coeff(n - i);
        let local = g.taylor_shift(b);
        let scale = g.shifted_magnitude(b);
        // Fuchsian condition: ord_b G_i >= n_s - i, with equality for G_0.
        let low = n_s.saturating_sub(i);
        for j in 0..low {
            if !local.coeff(j).is_negligible(scale, tol) {
                return Err(Error::InvalidInput(format!(
                    "coefficient of ∂^{} vanishes to order {} < {} at the point",
                    n - i,
                    j,
                    low
                )));
            }
        }
        if i == 0 && local.coeff(n_s).is_negligible(scale, tol) {
            return Err(Error::InvalidInput(
                "leading coefficient does not vanish to the declared order".into(),
            ));
        }
        if i <= n_s {
            chi = &chi + &falling_poly::<K>(n - i).scale(&local.coeff(n_s - i));
        }
    }
    Ok(IndicialPolynomial {
        location: Location::Point(b.clone()),
        poly: chi,
    })
}

/// All roots of `p`, which must be integers; sorted ascending with
/// multiplicity.
pub fn integer_roots<K: Field>(p: &IndicialPolynomial<K>, tol: f64) -> Result<Vec<i64>> {
    let poly = &p.poly;
    if poly.is_zero() {
        return Err(Error::InvalidInput("zero indicial polynomial".into()));
    }
    if K::EXACT {
        let q: Poly<Rational> = poly.map(|c| c.to_rational().expect("exact scalar"));
        let (roots, rest) = integer_roots_exact(&q);
        if rest.degree().finite().unwrap_or(0) > 0 {
            return Err(Error::NonIntegralExponent);
        }
        return Ok(roots);
    }
    let cp = poly.to_complex();
    let approx = complex_roots(&cp);
    let mut rounded: Vec<i64> = Vec::with_capacity(approx.len());
    for z in &approx {
        let k = z.re.round();
        // multiple roots are only located to about sqrt(eps) accuracy
        if (z - super::scalar::Complex::new(k, 0.0)).norm() > 1e-3 * k.abs().max(1.0) {
            return Err(Error::NonIntegralExponent);
        }
        rounded.push(k as i64);
    }
    rounded.sort_unstable();
    // Re-verification: the rounded roots must reproduce the coefficients.
    let lc = *cp.leading().expect("nonzero");
    let rebuilt = rounded.iter().fold(Poly::constant(lc), |acc, &k| {
        &acc * &Poly::linear_root(super::scalar::Complex::new(k as f64, 0.0))
    });
    let scale = cp.max_abs();
    let ok = (0..cp.coeffs().len().max(rebuilt.coeffs().len()))
        .all(|i| (cp.coeff(i) - rebuilt.coeff(i)).norm() <= tol.max(1e-12) * scale.max(1.0) * 10.0);
    if !ok {
        return Err(Error::NonIntegralExponent);
    }
    Ok(rounded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, Complex};

    fn p(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn pure_derivative_at_infinity() {
        let d = DiffOp::<RatFunc<Rational>>::d(3);
        let chi = indicial_at_infinity(&d).unwrap();
        assert_eq!(chi.poly, falling_poly(3));
        assert_eq!(integer_roots(&chi, 0.0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn cleared_operator_at_zero() {
        // −2u³∂² + 6u²∂ − 6u annihilates u and u³
        let dt = DiffOp::new(vec![p(&[0, -6]), p(&[0, 0, 6]), p(&[0, 0, 0, -2])]);
        let chi = indicial_at_point(&dt, &rat(0), 3, 0.0).unwrap();
        assert_eq!(chi.poly, p(&[-6, 8, -2]));
        assert_eq!(integer_roots(&chi, 0.0).unwrap(), vec![1, 3]);
        assert!(indicial_at_point(&dt, &rat(0), 2, 0.0).is_err());
        // an ordinary point
        let chi1 = indicial_at_point(&dt, &rat(1), 0, 0.0).unwrap();
        assert_eq!(integer_roots(&chi1, 0.0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn non_integral_roots_fail() {
        let chi = IndicialPolynomial {
            location: Location::Infinity,
            poly: p(&[1, 0, 1]),
        };
        assert_eq!(integer_roots(&chi, 0.0), Err(Error::NonIntegralExponent));
        let chif = IndicialPolynomial {
            location: Location::Infinity,
            poly: chi.poly.to_complex(),
        };
        assert_eq!(integer_roots(&chif, 1e-8), Err(Error::NonIntegralExponent));
        let ok = IndicialPolynomial {
            location: Location::<Complex>::Infinity,
            poly: p(&[3, -4, 1]).to_complex(),
        };
        assert_eq!(integer_roots(&ok, 1e-8).unwrap(), vec![1, 3]);
    }
}
