//! Rational functions in `u` with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::{Degree, Poly};
use super::scalar::{Field, Ring};
use crate::{Error, Result};

/// `num / den` with `den` monic. Exact fields keep the pair reduced; floating
/// fields skip the gcd (it is numerically unstable) and rely on callers that
/// share a common denominator.
#[derive(Clone)]
pub struct RatFunc<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = den.leading().expect("nonzero").inv();
        let mut num = num.scale(&lc);
        let mut den = den.scale(&lc);
        if K::EXACT && !num.is_zero() {
            let g = num.gcd(&den);
            if g.degree() != Degree::Finite(0) {
                num = num.div_rem(&g)?.0;
                den = den.div_rem(&g)?.0;
            }
        }
        if num.is_zero() {
            den = Poly::one();
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `c / (u - b)^k`.
    pub fn pole(c: K, b: K, k: usize) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::linear_root(b).pow(k),
        }
    }

    pub fn numer(&self) -> &Poly<K> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Degree::Finite(0)
    }

    pub fn eval(&self, x: &K) -> Result<K> {
        let d = self.den.eval(x);
        if d.is_negligible(self.den.max_abs(), 1e-14) {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn derivative(&self) -> Self {
        if K::EXACT && !self.num.is_zero() {
            // with d = g h and g = gcd(d, d'): (n' h − n d'/g) / (d h)
            let dd = self.den.derivative();
            let g = self.den.gcd(&dd);
            let h = self.den.div_rem(&g).expect("nonzero").0;
            let dg = if dd.is_zero() { dd } else { dd.div_rem(&g).expect("nonzero").0 };
            let num = &(&self.num.derivative() * &h) - &(&self.num * &dg);
            return Self::new(num, &self.den * &h).expect("nonzero denominator");
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::new(num, den).expect("nonzero denominator")
    }

    /// Expresses `self` over the given denominator, returning the numerator.
    /// Fails when `den` is not a multiple of the stored denominator.
    pub fn numerator_over(&self, den: &Poly<K>, tol: f64) -> Result<Poly<K>> {
        let q = den.div_exact(&self.den, tol)?;
        Ok(&self.num * &q)
    }

    /// Coefficients `c_0, c_1, ..., c_m` of the expansion
    /// `Σ_j c_j u^{-j}` at infinity. Fails when the function grows at infinity.
    pub fn laurent_at_infinity(&self, m: usize) -> Result<Vec<K>> {
        let dn = self.num.degree();
        let dd = self.den.degree().finite().expect("nonzero denominator");
        if let Degree::Finite(k) = dn {
            if k > dd {
                return Err(Error::InvalidInput(
                    "rational function is not expandable at infinity".into(),
                ));
            }
        } else {
            return Ok(vec![K::zero(); m + 1]);
        }
        // In w = 1/u: num(u)/den(u) = w^{dd-dn} * rev(num)(w) / rev(den)(w).
        let rev = |p: &Poly<K>, deg: usize| -> Vec<K> { (0..=deg).map(|i| p.coeff(deg - i)).collect() };
        let dn = dn.finite().unwrap();
        let rn = rev(&self.num, dn);
        let rd = rev(&self.den, dd);
        let shift = dd - dn;
        let mut out = vec![K::zero(); m + 1];
        // power series division rn / rd (rd[0] = 1 since den is monic)
        let mut series: Vec<K> = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut acc = rn.get(j).cloned().unwrap_or_else(K::zero);
            for i in 1..=j.min(dd) {
                acc = acc - rd[i].clone() * series[j - i].clone();
            }
            series.push(acc);
        }
        for j in 0..=m {
            if j >= shift {
                out[j] = series[j - shift].clone();
            }
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.num.max_abs().max(self.den.max_abs())
    }
}

impl<K: Field> PartialEq for RatFunc<K> {
    fn eq(&self, o: &Self) -> bool {
        // Cross-multiplication avoids depending on the normal form.
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<K: Field> Add for RatFunc<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den).expect("nonzero");
        }
        if K::EXACT {
            // over lcm(den, o.den)
            let g = self.den.gcd(&o.den);
            let a = self.den.div_rem(&g).expect("nonzero").0;
            let b = o.den.div_rem(&g).expect("nonzero").0;
            let num = &(&self.num * &b) + &(&o.num * &a);
            return RatFunc::new(num, &self.den * &b).expect("nonzero");
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(num, &self.den * &o.den).expect("nonzero")
    }
}

impl<K: Field> Sub for RatFunc<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<K: Field> Mul for RatFunc<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        if K::EXACT {
            // both inputs are reduced, so only cross factors can cancel
            let g1 = self.num.gcd(&o.den);
            let g2 = o.num.gcd(&self.den);
            let q = |p: &Poly<K>, g: &Poly<K>| p.div_rem(g).expect("nonzero").0;
            let num = &q(&self.num, &g1) * &q(&o.num, &g2);
            let den = &q(&self.den, &g2) * &q(&o.den, &g1);
            let lc = den.leading().expect("nonzero").inv();
            return RatFunc { num: num.scale(&lc), den: den.scale(&lc) };
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

impl<K: Field> Neg for RatFunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<K: Field> Div for RatFunc<K> {
    type Output = Self;
    /// Panics on division by the zero function.
    fn div(self, o: Self) -> Self {
        assert!(!o.num.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num).expect("nonzero")
    }
}

impl<K: Field> Ring for RatFunc<K> {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        RatFunc::constant(K::from_i64(v))
    }
}

impl<K: fmt::Debug> fmt::Debug for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}
