//! Dense univariate polynomials, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Ring};
use crate::{Error, Result};

/// Degree of a polynomial. The zero polynomial has its own variant instead of
/// a `-1` integer so that degree arithmetic cannot silently go wrong.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `true` when the degree is at most `bound` (the zero polynomial always is).
    pub fn at_most(self, bound: usize) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => d <= bound,
        }
    }
}

/// Polynomial in one variable `u` with coefficients in `R`.
///
/// Invariant: the coefficient vector carries no trailing exact zero.
#[derive(Clone, PartialEq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c u^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `u - b`.
    pub fn linear_root(b: R) -> Self {
        Poly::new(vec![-b, R::one()])
    }

    /// `prod (u - b_s)^{n_s}`.
    pub fn from_roots(roots: &[(R, usize)]) -> Self {
        let mut p = Poly::one();
        for (b, m) in roots {
            for _ in 0..*m {
                p = &p * &Poly::linear_root(b.clone());
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `u^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Lowest `k` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * R::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Taylor coefficients at `b`: the polynomial `p(u + b)`.
    pub fn taylor_shift(&self, b: &R) -> Self {
        // Horner in the shifted variable.
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![b.clone(), R::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Composition `self(other(u))`.
    pub fn compose(&self, other: &Poly<R>) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<K: Field> Poly<K> {
    /// Drops trailing coefficients negligible relative to the largest one.
    pub fn trim_tol(&self, tol: f64) -> Self {
        if K::EXACT {
            return self.clone();
        }
        let scale = self.max_abs();
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|c| c.magnitude() <= tol * scale.max(1.0)) {
            v.pop();
        }
        Poly::new(v)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Largest Taylor coefficient at `b` before cancellation, i.e. the
    /// largest coefficient of `Σ |c_k| (u + |b|)^k`. The natural scale for
    /// deciding whether a Taylor coefficient at `b` vanishes.
    pub fn shifted_magnitude(&self, b: &K) -> f64 {
        let r = b.magnitude();
        let mut acc: Vec<f64> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc ← acc · (u + r) + |c|
            let mut next = vec![0.0; acc.len() + 1];
            for (j, a) in acc.iter().enumerate() {
                next[j] += a * r;
                next[j + 1] += a;
            }
            next[0] += c.magnitude();
            acc = next;
        }
        acc.into_iter().fold(0.0, f64::max)
    }

    pub fn monic(&self) -> Result<Self> {
        let lc = self
            .leading()
            .ok_or_else(|| Error::InvalidInput("monic normalization of the zero polynomial".into()))?;
        Ok(self.scale(&lc.inv()))
    }

    /// Euclidean division. The divisor must be nonzero.
    pub fn div_rem(&self, d: &Poly<K>) -> Result<(Poly<K>, Poly<K>)> {
        let dl = d
            .leading()
            .ok_or(Error::DivisionByZero)?
            .clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        let inv = dl.inv();
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = rem[idx].clone() - c.clone() * dc.clone();
            }
            // exact cancellation of the leading term
            rem[k] = K::zero();
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must be exact; the remainder has to vanish (relative to
    /// `tol` in floating mode).
    pub fn div_exact(&self, d: &Poly<K>, tol: f64) -> Result<Poly<K>> {
        let (q, r) = self.div_rem(d)?;
        let scale = self.max_abs();
        if r.coeffs.iter().all(|c| c.is_negligible(scale, tol)) {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Monic greatest common divisor. Meant for exact fields; in floating mode
    /// the result is only reliable for well separated roots.
    pub fn gcd(&self, other: &Poly<K>) -> Poly<K> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            // monic remainders keep exact coefficients small
            b = if K::EXACT && !r.is_zero() { r.monic().expect("nonzero") } else { r };
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    /// Square-free decomposition: pairs `(factor, multiplicity)` with monic,
    /// pairwise coprime, square-free factors (exact fields only).
    pub fn squarefree_decomposition(&self) -> Vec<(Poly<K>, usize)> {
        let mut out = Vec::new();
        if self.degree().finite().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic().expect("nonzero");
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).expect("nonzero").0;
        let mut c = df.div_rem(&a).expect("nonzero").0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree() != Degree::Finite(0) && !g.is_zero() {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).expect("nonzero").0;
            if b.degree() == Degree::Finite(0) {
                break;
            }
            c = d.div_rem(&g).expect("nonzero").0;
            d = &c - &b.derivative();
            i += 1;
            a = a.div_rem(&g).map(|x| x.0).unwrap_or(a);
        }
        let _ = a;
        out
    }

    pub fn to_complex(&self) -> Poly<super::scalar::Complex> {
        Poly::new(self.coeffs.iter().map(|c| c.to_complex()).collect())
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: Poly<R>) -> Poly<R> {
        &self + &o
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: Poly<R>) -> Poly<R> {
        &self - &o
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: Poly<R>) -> Poly<R> {
        &self * &o
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

/// Polynomials over a ring form a ring; this lets matrices of polynomials
/// reuse the generic matrix code.
impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, Rational};

    fn p(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(Poly::<Rational>::zero().degree(), Degree::NegInfinity);
        assert_eq!(p(&[0, 0]).degree(), Degree::NegInfinity);
        assert_eq!(p(&[1]).degree(), Degree::Finite(0));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn division_and_gcd() {
        // (u-1)(u-2) / (u-1)
        let a = p(&[2, -3, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).pow(2)), p(&[-1, 1]));
        assert!(p(&[1, 1]).div_exact(&p(&[0, 1]), 0.0).is_err());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let a = p(&[3, 0, -2, 1]);
        let t = a.taylor_shift(&rat(2));
        assert_eq!(t.coeff(0), a.eval(&rat(2)));
        assert_eq!(t.coeff(1), a.derivative().eval(&rat(2)));
    }

    #[test]
    fn squarefree_parts() {
        // (u-1)^2 (u+2)^3 u
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[2, 1]).pow(3)) * &p(&[0, 1]);
        let mut sf = f.squarefree_decomposition();
        sf.sort_by_key(|x| x.1);
        assert_eq!(sf.len(), 3);
        assert_eq!(sf[0], (p(&[0, 1]), 1));
        assert_eq!(sf[1], (p(&[-1, 1]), 2));
        assert_eq!(sf[2], (p(&[2, 1]), 3));
    }
}
