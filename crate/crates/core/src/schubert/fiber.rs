//! Fibers of the Wronski map and intersections of Schubert cells, through
//! the Bethe spectrum, plus a closed-form oracle for `N = 2`, `n ≤ 3`.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::Poly;
use crate::algebra::roots::complex_roots;
use crate::algebra::scalar::{Complex, Field, Rational, Ring};
use crate::bethe::{
    fundamental_operator_of, restricted_family, simultaneous_spectrum, RestrictedFamily, SpectrumEntry, SpectrumOptions,
};
use crate::rep::coinvariant::build_weyl_tensor;
use crate::rep::module::build_tensor_evaluation;
use crate::rep::singular::singular_space;
use crate::rep::spec::ProblemSpec;
use crate::schubert::chart::{CellChart, SchubertPoint};
use crate::schubert::operator::reconstruct_point_from_operator;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberMode {
    /// `⊗ W_{n_s}(b_s)`, targeting `Wr^{-1}(a)`.
    Weyl,
    /// `⊗ L_{λ^{(s)}}(b_s)`, targeting `Ω_{Λ,λ,b}`.
    IrreducibleTensor,
}

#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub point: SchubertPoint<Complex>,
    pub multiplicity: usize,
    /// Index of the spectrum entry the point came from.
    pub source: usize,
}

/// Spectrum and fiber of one problem.
#[derive(Clone, Debug)]
pub struct FiberResult {
    pub space_dim: usize,
    pub spectrum: Vec<SpectrumEntry>,
    pub points: Vec<FiberPoint>,
}

impl FiberResult {
    pub fn count_with_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

/// Restricted Bethe family on the singular weight space of the module
/// matching `mode`.
pub fn family_for(spec: &ProblemSpec, mode: FiberMode) -> Result<RestrictedFamily> {
    let (module, target) = match mode {
        FiberMode::Weyl => {
            let (m, _) = build_weyl_tensor(spec)?;
            let q = m.denom.clone();
            (m, q)
        }
        FiberMode::IrreducibleTensor => {
            if spec.lambda_list.is_empty() {
                return Err(Error::InvalidInput("irreducible-tensor mode needs one partition per point".into()));
            }
            (build_tensor_evaluation(spec)?, spec.q_poly())
        }
    };
    let s = singular_space(&module, &spec.lambda);
    restricted_family(&module, &s, &target)
}

/// Spectrum of the Bethe algebra on the singular weight space of the
/// module matching `mode`.
pub fn spectrum_for(spec: &ProblemSpec, mode: FiberMode, opts: &SpectrumOptions) -> Result<(usize, Vec<SpectrumEntry>)> {
    let fam = family_for(spec, mode)?;
    Ok((fam.dim, simultaneous_spectrum(&fam, opts)?))
}

/// Points of the fiber attached to an already computed spectrum.
pub fn fiber_from_spectrum(spec: &ProblemSpec, space_dim: usize, spectrum: Vec<SpectrumEntry>, tol: f64) -> Result<FiberResult> {
    let chart = CellChart::for_partition(&spec.lambda)?;
    let mut points: Vec<FiberPoint> = Vec::new();
    for (k, entry) in spectrum.iter().enumerate() {
        let op = fundamental_operator_of(entry);
        let point = reconstruct_point_from_operator(&op.cleared, &chart, tol)?;
        match points.iter_mut().find(|p| p.point.distance(&point) < 1e-6) {
            Some(existing) => {
                warn!("spectrum entries {} and {k} give the same point; merging", existing.source);
                existing.multiplicity += entry.multiplicity;
            }
            None => points.push(FiberPoint { point, multiplicity: entry.multiplicity, source: k }),
        }
    }
    Ok(FiberResult { space_dim, spectrum, points })
}

pub fn fiber_via_bethe(spec: &ProblemSpec, mode: FiberMode, opts: &SpectrumOptions) -> Result<FiberResult> {
    let (space_dim, spectrum) = spectrum_for(spec, mode, opts)?;
    fiber_from_spectrum(spec, space_dim, spectrum, opts.tol)
}

/// Distinct roots of a complex polynomial with multiplicities, merged at
/// relative distance `gap`.
fn roots_with_multiplicity(p: &Poly<Complex>, gap: f64) -> Vec<(Complex, usize)> {
    let roots = complex_roots(p);
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut out: Vec<(Complex, usize)> = Vec::new();
    for z in roots {
        match out.iter_mut().find(|(w, _)| (w - z).norm() <= gap * scale) {
            Some(e) => e.1 += 1,
            None => out.push((z, 1)),
        }
    }
    out
}

/// `Wr^{-1}(a)` for `N = 2`, `n ≤ 3` by direct elimination on the cell
/// coordinates. `q` is the monic target Wronskian. Multiplicities are the
/// scheme-theoretic ones (double roots of the eliminant count twice).
pub fn brute_force_fiber_n2(chart: &CellChart, q: &Poly<Rational>) -> Result<Vec<(SchubertPoint<Complex>, usize)>> {
    let n = chart.wronskian_degree();
    if chart.n_gl != 2 || n > 3 {
        return Err(Error::InvalidInput("closed-form fiber only for N = 2, n ≤ 3".into()));
    }
    if q.degree().finite() != Some(n) || q.leading() != Some(&Rational::one()) {
        return Err(Error::InvalidInput("target must be monic of degree |λ|".into()));
    }
    let qc = q.to_complex();
    let (l1, l2) = (chart.lambda.get(0), chart.lambda.get(1));
    let c = |x: f64| Complex::new(x, 0.0);
    let point = |vals: &[((usize, usize), Complex)]| {
        let mut coords = vec![c(0.0); chart.dim()];
        for &((i, j), v) in vals {
            coords[chart.index_of(i, j).expect("coordinate of the chart")] = v;
        }
        SchubertPoint::new(chart.clone(), coords).expect("shape")
    };
    match (l1, l2) {
        (_, 0) => {
            // f_2 = 1, Wr = −f_1', so f_1 = d_1 ∫ q with no constant term
            let d1 = chart.degrees[0];
            let vals: Vec<((usize, usize), Complex)> = (1..d1)
                .map(|j| {
                    let e = d1 - j;
                    ((0, j), qc.coeff(e - 1) * (d1 as f64) / (e as f64))
                })
                .collect();
            Ok(vec![(point(&vals), 1)])
        }
        (1, 1) => {
            // Wr = −(u² + 2 f21 u − f12)
            Ok(vec![(point(&[((0, 2), -qc.coeff(0)), ((1, 1), qc.coeff(1) / 2.0)]), 1)])
        }
        (2, 1) => {
            // Wr = −2 (u³ + (f11 + 3 f21)/2 u² + f11 f21 u − f13/2):
            // f11 = 2 q2 − 3 f21 and 3 f21² − 2 q2 f21 + q1 = 0
            let (q0, q1, q2) = (qc.coeff(0), qc.coeff(1), qc.coeff(2));
            let eliminant = Poly::new(vec![q1, -q2 * 2.0, c(3.0)]);
            Ok(roots_with_multiplicity(&eliminant, 1e-6)
                .into_iter()
                .map(|(f21, m)| {
                    let f11 = q2 * 2.0 - f21 * 3.0;
                    (point(&[((0, 1), f11), ((0, 3), -q0 * 2.0), ((1, 1), f21)]), m)
                })
                .collect())
        }
        _ => Err(Error::InvalidInput("closed-form fiber only for N = 2, n ≤ 3".into())),
    }
}

/// Point-by-point comparison of two fibers with multiplicities.
pub fn same_fiber(a: &[(SchubertPoint<Complex>, usize)], b: &[(SchubertPoint<Complex>, usize)], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|(p, m)| {
        let scale = p.coords.iter().map(|z| z.magnitude()).fold(1.0, f64::max);
        match (0..b.len()).find(|&j| !used[j] && b[j].1 == *m && p.distance(&b[j].0) <= tol * scale) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}
