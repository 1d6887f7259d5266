//! Coordinates on the Schubert cell `Ω_λ̄(∞) ⊂ Gr(N, d)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::mpoly::MPoly;
use crate::algebra::poly::Poly;
use crate::algebra::scalar::{Field, Rational, Ring};
use crate::algebra::wronskian::wronskian;
use crate::rep::partition::Partition;
use crate::{Error, Result};

/// `d_i = λ_i + N − i`, `P = {d_i}` and the coordinate set
/// `{(i, j) : 1 ≤ j ≤ d_i, d_i − j ∉ P}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellChart {
    pub n_gl: usize,
    pub d: usize,
    pub lambda: Partition,
    pub lambda_bar: Partition,
    pub degrees: Vec<usize>,
    /// `(i, j)` with `i` 0-based and `j` as above; `f_ij` multiplies `u^{d_i − j}`.
    pub coords: Vec<(usize, usize)>,
}

impl CellChart {
    pub fn new(lambda: &Partition, d: usize) -> Result<Self> {
        let n = lambda.n_parts();
        if n == 0 || lambda.get(0) + n > d {
            return Err(Error::InvalidInput(format!("λ₁ + N must not exceed d = {d}")));
        }
        let degrees: Vec<usize> = (0..n).map(|i| lambda.get(i) + n - 1 - i).collect();
        let bar: Vec<usize> = (0..n).map(|i| d - n - lambda.get(n - 1 - i)).collect();
        let mut coords = Vec::new();
        for (i, &di) in degrees.iter().enumerate() {
            for j in 1..=di {
                if !degrees.contains(&(di - j)) {
                    coords.push((i, j));
                }
            }
        }
        Ok(CellChart {
            n_gl: n,
            d,
            lambda: lambda.clone(),
            lambda_bar: Partition::new(&bar, n)?,
            degrees,
            coords,
        })
    }

    /// Chart with `d = max(λ₁ + N, n + N)`, `n = |λ|`.
    pub fn for_partition(lambda: &Partition) -> Result<Self> {
        let n = lambda.n_parts();
        Self::new(lambda, (lambda.get(0) + n).max(lambda.size() + n))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Degree of the Wronskian of any point, `|λ|`.
    pub fn wronskian_degree(&self) -> usize {
        self.lambda.size()
    }

    /// `∏_{i<j} (d_j − d_i)`, the leading coefficient of the Wronskian.
    pub fn wronskian_constant<K: Field>(&self) -> K {
        let mut c = K::one();
        for i in 0..self.n_gl {
            for j in i + 1..self.n_gl {
                c = c * K::from_i64(self.degrees[j] as i64 - self.degrees[i] as i64);
            }
        }
        c
    }

    /// Position of `(i, j)` in the coordinate list.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.coords.iter().position(|&c| c == (i, j))
    }
}

/// A point of the cell, given by its coordinates `f_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchubertPoint<K> {
    pub chart: CellChart,
    pub coords: Vec<K>,
}

impl<K: Field> SchubertPoint<K> {
    pub fn new(chart: CellChart, coords: Vec<K>) -> Result<Self> {
        if coords.len() != chart.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for a cell of dimension {}",
                coords.len(),
                chart.dim()
            )));
        }
        Ok(SchubertPoint { chart, coords })
    }

    pub fn origin(chart: CellChart) -> Self {
        let coords = vec![K::zero(); chart.dim()];
        SchubertPoint { chart, coords }
    }

    /// The echelon basis `f_i(u) = u^{d_i} + Σ f_ij u^{d_i − j}`.
    pub fn basis(&self) -> Vec<Poly<K>> {
        let ch = &self.chart;
        ch.degrees
            .iter()
            .enumerate()
            .map(|(i, &di)| {
                let mut c = vec![K::zero(); di + 1];
                c[di] = K::one();
                for (k, &(ci, j)) in ch.coords.iter().enumerate() {
                    if ci == i {
                        c[di - j] = self.coords[k].clone();
                    }
                }
                Poly::new(c)
            })
            .collect()
    }

    /// Reads the coordinates from an echelon basis sorted by decreasing
    /// degree. Fails when the basis does not have the shape of the chart.
    pub fn from_basis(chart: &CellChart, basis: &[Poly<K>], tol: f64) -> Result<Self> {
        if basis.len() != chart.n_gl {
            return Err(Error::CheckFailed(format!(
                "{} basis polynomials for N = {}",
                basis.len(),
                chart.n_gl
            )));
        }
        for (i, f) in basis.iter().enumerate() {
            let di = chart.degrees[i];
            if f.degree().finite() != Some(di) {
                return Err(Error::CheckFailed(format!(
                    "basis degree {:?} misses the chart degree {di}",
                    f.degree().finite()
                )));
            }
            let lead = f.leading().expect("nonzero");
            let one_off = lead.clone() - K::one();
            if !one_off.is_negligible(1.0, tol) {
                return Err(Error::CheckFailed("basis is not monic".into()));
            }
            for &dk in &chart.degrees {
                if dk < di && !f.coeff(dk).is_negligible(f.max_abs(), tol) {
                    return Err(Error::CheckFailed("basis is not reduced at the pivots".into()));
                }
            }
        }
        let coords = chart
            .coords
            .iter()
            .map(|&(i, j)| basis[i].coeff(chart.degrees[i] - j))
            .collect();
        Ok(SchubertPoint { chart: chart.clone(), coords })
    }

    /// Largest coordinate distance to another point of the same chart.
    pub fn distance(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> SchubertPoint<L> {
        SchubertPoint { chart: self.chart.clone(), coords: self.coords.iter().map(f).collect() }
    }
}

impl SchubertPoint<Rational> {
    /// Point with integer coordinates drawn from `[-range, range]`.
    pub fn random(chart: &CellChart, rng: &mut impl Rng, range: i64) -> Self {
        let coords = (0..chart.dim()).map(|_| Rational::from_i64(rng.gen_range(-range..=range))).collect();
        SchubertPoint { chart: chart.clone(), coords }
    }
}

/// `a = (a_1, ..., a_n)` with `Wr(f_1, ..., f_N) = c (u^n + Σ (−1)^s a_s u^{n−s})`;
/// the constant `c` is checked against `∏_{i<j}(d_j − d_i)`.
pub fn wronski_map<K: Field>(p: &SchubertPoint<K>) -> Result<Vec<K>> {
    let w = wronskian(&p.basis())?;
    let n = p.chart.wronskian_degree();
    let c: K = p.chart.wronskian_constant();
    if w.degree().finite() != Some(n) || !(w.leading().expect("nonzero").clone() - c.clone()).is_negligible(1.0, 1e-9) {
        return Err(Error::CheckFailed("Wronskian leading term differs from ∏(d_j − d_i) u^n".into()));
    }
    let monic = w.scale(&c.inv());
    Ok((1..=n)
        .map(|s| {
            let x = monic.coeff(n - s);
            if s % 2 == 0 {
                x
            } else {
                -x
            }
        })
        .collect())
}

/// The echelon basis with the chart coordinates as indeterminates: the
/// `k`-th coordinate of `chart.coords` is the variable `x_k`.
pub fn symbolic_basis(chart: &CellChart) -> Vec<Poly<MPoly>> {
    chart
        .degrees
        .iter()
        .enumerate()
        .map(|(i, &di)| {
            let mut c = vec![MPoly::zero(); di + 1];
            c[di] = MPoly::one();
            for (k, &(ci, j)) in chart.coords.iter().enumerate() {
                if ci == i {
                    c[di - j] = MPoly::var(k);
                }
            }
            Poly::new(c)
        })
        .collect()
}

/// `Wr(f_1, …, f_N)` as a polynomial in `u` over the coordinate ring of the cell.
pub fn symbolic_wronskian(chart: &CellChart) -> Result<Poly<MPoly>> {
    wronskian(&symbolic_basis(chart))
}

/// `u^n + Σ (−1)^s a_s u^{n−s}`.
pub fn polynomial_from_coefficients<K: Field>(a: &[K]) -> Poly<K> {
    let n = a.len();
    let mut c = vec![K::zero(); n + 1];
    c[n] = K::one();
    for (k, x) in a.iter().enumerate() {
        let s = k + 1;
        c[n - s] = if s % 2 == 0 { x.clone() } else { -x.clone() };
    }
    Poly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn chart_shapes() {
        let ch = CellChart::for_partition(&Partition::new(&[2, 1], 2).unwrap()).unwrap();
        assert_eq!(ch.degrees, vec![3, 1]);
        assert_eq!(ch.coords, vec![(0, 1), (0, 3), (1, 1)]);
        assert_eq!(ch.dim(), 3);
        assert_eq!(ch.lambda_bar.parts(), &[2, 1]);
        let ch = CellChart::new(&Partition::new(&[1, 1], 2).unwrap(), 4).unwrap();
        assert_eq!(ch.coords, vec![(0, 2), (1, 1)]);
    }

    #[test]
    fn wronski_examples() {
        let ch = CellChart::for_partition(&Partition::new(&[1, 1], 2).unwrap()).unwrap();
        // f1 = u² + 1, f2 = u
        let p = SchubertPoint::new(ch, vec![rat(1), rat(0)]).unwrap();
        assert_eq!(wronski_map(&p).unwrap(), vec![rat(0), rat(-1)]);
        let ch = CellChart::for_partition(&Partition::new(&[2, 1], 2).unwrap()).unwrap();
        assert_eq!(wronski_map(&SchubertPoint::<Rational>::origin(ch)).unwrap(), vec![rat(0); 3]);
        let ch = CellChart::for_partition(&Partition::zero(3)).unwrap();
        assert!(wronski_map(&SchubertPoint::<Rational>::origin(ch)).unwrap().is_empty());
    }

    #[test]
    fn basis_round_trip() {
        let ch = CellChart::for_partition(&Partition::new(&[2, 1, 0], 3).unwrap()).unwrap();
        let p = SchubertPoint::new(ch.clone(), (0..ch.dim()).map(|k| rat(k as i64 - 1)).collect()).unwrap();
        assert_eq!(SchubertPoint::from_basis(&ch, &p.basis(), 0.0).unwrap(), p);
    }
}
