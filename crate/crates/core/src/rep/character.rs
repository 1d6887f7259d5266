//! Truncated q-series and graded characters.

use std::fmt;

use crate::algebra::scalar::{format_rational, Rational, Ring};
use crate::rep::coinvariant::build_weyl_from_coefficients;
use crate::rep::module::{build_irrep, tensor_product};
use crate::rep::partition::Partition;
use crate::rep::singular::{singular_space, singular_space_in};
use crate::{Error, Result};

/// Power series in `q` known up to and including `q^trunc`.
#[derive(Clone, PartialEq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
    trunc: usize,
}

impl QSeries {
    pub fn new(mut coeffs: Vec<Rational>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, Rational::zero());
        QSeries { coeffs, trunc }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, trunc)
    }

    /// `q^k` (zero if `k` exceeds the truncation).
    pub fn monomial(k: usize, trunc: usize) -> Self {
        let mut v = vec![Rational::zero(); trunc + 1];
        if k <= trunc {
            v[k] = Rational::one();
        }
        QSeries { coeffs: v, trunc }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Product truncated at the smaller of the two truncation degrees.
    pub fn mul(&self, o: &QSeries) -> QSeries {
        let t = self.trunc.min(o.trunc);
        let mut v = vec![Rational::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(t + 1 - i) {
                v[i + j] += a * b;
            }
        }
        QSeries { coeffs: v, trunc: t }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<QSeries> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::InvalidInput("q-series with zero constant term".into()));
        }
        let inv0 = Rational::one() / c0;
        let mut v: Vec<Rational> = vec![inv0.clone()];
        for k in 1..=self.trunc {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &v[k - j];
            }
            v.push(-acc * &inv0);
        }
        Ok(QSeries { coeffs: v, trunc: self.trunc })
    }

    pub fn div(&self, o: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Sum of the known coefficients (the value at `q = 1` for polynomials
    /// of degree at most the truncation).
    pub fn value_at_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, b| a + b.clone())
    }

    /// First index where the two series differ, over the common range.
    pub fn first_difference(&self, o: &QSeries) -> Option<usize> {
        (0..=self.trunc.min(o.trunc)).find(|&k| self.coeff(k) != o.coeff(k))
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{}q^{k}", format_rational(c)))
            .collect();
        write!(f, "{} + O(q^{})", if terms.is_empty() { "0".into() } else { terms.join(" + ") }, self.trunc + 1)
    }
}

/// `1 − q^k`.
fn one_minus(k: usize, trunc: usize) -> QSeries {
    let mut s = QSeries::one(trunc);
    if k <= trunc {
        s.coeffs[k] -= Rational::one();
    }
    s
}

/// `(q)_m = ∏_{i=1}^m (1 − q^i)`.
pub fn q_pochhammer(m: usize, trunc: usize) -> QSeries {
    (1..=m).fold(QSeries::one(trunc), |acc, i| acc.mul(&one_minus(i, trunc)))
}

/// Graded character of the singular weight-λ part of the Weyl module `W_m`:
/// `(q)_m ∏_{i<j}(1 − q^{λ_i − λ_j + j − i}) / ∏_i (q)_{λ_i + N − i} · q^{Σ(i−1)λ_i}`.
pub fn graded_character_weyl(lambda: &Partition, trunc: usize) -> QSeries {
    let n = lambda.n_parts();
    let m = lambda.size();
    let l = lambda.parts();
    let mut num = q_pochhammer(m, trunc);
    for i in 0..n {
        for j in i + 1..n {
            num = num.mul(&one_minus(l[i] + j - l[j] - i, trunc));
        }
    }
    let mut den = QSeries::one(trunc);
    for (i, &li) in l.iter().enumerate() {
        den = den.mul(&q_pochhammer(li + n - 1 - i, trunc));
    }
    num.div(&den)
        .expect("pochhammer symbols are invertible")
        .mul(&QSeries::monomial(lambda.n_statistic(), trunc))
}

/// Graded character of the cell algebra:
/// `∏_{i<j}(1 − q^{d_i − d_j}) / ∏_i (q)_{d_i}` with `d_i = λ_i + N − i`.
pub fn graded_character_cell(lambda: &Partition, d: usize, trunc: usize) -> Result<QSeries> {
    let n = lambda.n_parts();
    if lambda.parts().first().copied().unwrap_or(0) + n > d {
        return Err(Error::InvalidInput(format!("λ₁ > d − N for λ = {lambda}, d = {d}")));
    }
    let ds: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &l)| l + n - 1 - i).collect();
    let mut num = QSeries::one(trunc);
    for i in 0..n {
        for j in i + 1..n {
            num = num.mul(&one_minus(ds[i] - ds[j], trunc));
        }
    }
    let den = ds.iter().fold(QSeries::one(trunc), |acc, &di| acc.mul(&q_pochhammer(di, trunc)));
    num.div(&den)
}

/// Graded multiplicity of the Specht module in the coinvariant algebra via
/// hook lengths: `q^{n(λ)} [m]_q! / ∏_{hooks} [h]_q`.
pub fn fake_degree(lambda: &Partition, trunc: usize) -> QSeries {
    let m = lambda.size();
    let num = q_pochhammer(m, trunc);
    let den = lambda
        .hooks()
        .into_iter()
        .fold(QSeries::one(trunc), |acc, h| acc.mul(&one_minus(h, trunc)));
    num.div(&den)
        .expect("invertible")
        .mul(&QSeries::monomial(lambda.n_statistic(), trunc))
}

/// Graded dimension of the singular weight-λ part of `W_m(0)`, read off the
/// grading of the coinvariant model.
pub fn graded_character_from_model(lambda: &Partition, trunc: usize) -> Result<QSeries> {
    let m = lambda.size();
    let (module, _) = build_weyl_from_coefficients(lambda.n_parts(), &vec![Rational::zero(); m])?;
    let degrees = module.degrees.clone().expect("homogeneous model");
    let top = degrees.iter().copied().max().unwrap_or(0);
    let mut v = vec![Rational::zero(); trunc + 1];
    for g in 0..=top.min(trunc) {
        let idx: Vec<usize> = (0..module.dim).filter(|&k| degrees[k] == g).collect();
        let dim = singular_space_in(&module, lambda, Some(&idx)).dim();
        v[g] = Rational::from_i64(dim as i64);
    }
    Ok(QSeries::new(v, trunc))
}

/// `dim (⊗_s L_{λ^{(s)}})^{sing}_λ` by explicit construction.
pub fn dim_multiplicity(lambda_list: &[Partition], lambda: &Partition) -> Result<usize> {
    let total: usize = lambda_list.iter().map(|p| p.size()).sum();
    if total != lambda.size() {
        return Ok(0);
    }
    if lambda_list.is_empty() {
        return Ok(usize::from(lambda.size() == 0));
    }
    let factors = lambda_list.iter().map(build_irrep).collect::<Result<Vec<_>>>()?;
    let m = tensor_product(&factors)?;
    Ok(singular_space(&m, lambda).dim())
}
