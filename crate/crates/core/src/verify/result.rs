//! Result documents and their JSON encodings.
//!
//! Rationals are written as `"p/q"` strings, complex numbers as `[re, im]`
//! pairs and polynomials as `{ "var": "u", "coeffs": [...] }`, lowest
//! coefficient first.

use serde::{Deserialize, Serialize};

use crate::algebra::indicial::Location;
use crate::algebra::poly::Poly;
use crate::algebra::scalar::{format_rational, Complex, Rational};
use crate::bethe::SpectrumEntry;
use crate::schubert::chart::CellChart;
use crate::schubert::fiber::FiberPoint;
use crate::schubert::operator::{exponents_of, fundamental_operator};
use crate::verify::problem::ProblemFile;
use crate::verify::suites::Check;
use crate::Result;

pub const TOOL: &str = "bethe-schubert";

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn complex_pair(z: &Complex) -> [f64; 2] {
    [clean(z.re), clean(z.im)]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoly {
    pub var: String,
    pub coeffs: Vec<[f64; 2]>,
}

impl ComplexPoly {
    pub fn from_poly(p: &Poly<Complex>) -> Self {
        ComplexPoly { var: "u".into(), coeffs: p.coeffs().iter().map(complex_pair).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalPoly {
    pub var: String,
    pub coeffs: Vec<String>,
}

impl RationalPoly {
    pub fn from_poly(p: &Poly<Rational>) -> Self {
        RationalPoly { var: "u".into(), coeffs: p.coeffs().iter().map(format_rational).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub numerator: ComplexPoly,
    pub denominator: ComplexPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub multiplicity: usize,
    pub eigenline_dim: usize,
    pub residual: f64,
    /// `h_1, …, h_N`.
    pub h: Vec<RationalFunction>,
    pub eigenvector: Vec<[f64; 2]>,
}

impl SpectrumRecord {
    pub fn from_entry(e: &SpectrumEntry) -> Self {
        SpectrumRecord {
            multiplicity: e.multiplicity,
            eigenline_dim: e.eigenline_dim,
            residual: e.residual,
            h: e
                .eta
                .iter()
                .map(|p| RationalFunction {
                    numerator: ComplexPoly::from_poly(p),
                    denominator: ComplexPoly::from_poly(&e.denom),
                })
                .collect(),
            eigenvector: e.eigenvector.iter().map(complex_pair).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartRecord {
    #[serde(rename = "N")]
    pub n_gl: usize,
    pub d: usize,
    pub lambda: Vec<usize>,
    pub degrees: Vec<usize>,
    /// `[i, j]` pairs, `i` counted from 1.
    pub coords: Vec<[usize; 2]>,
}

impl ChartRecord {
    pub fn from_chart(c: &CellChart) -> Self {
        ChartRecord {
            n_gl: c.n_gl,
            d: c.d,
            lambda: c.lambda.parts().to_vec(),
            degrees: c.degrees.clone(),
            coords: c.coords.iter().map(|&(i, j)| [i + 1, j]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentRecord {
    /// A rational point or `"inf"`.
    pub at: String,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberRecord {
    pub chart: ChartRecord,
    pub coordinates: Vec<[f64; 2]>,
    pub basis: Vec<ComplexPoly>,
    pub multiplicity: usize,
    pub source: usize,
    pub exponents: Vec<ExponentRecord>,
}

impl FiberRecord {
    pub fn from_point(p: &FiberPoint, points: &[Rational], tol: f64) -> Result<Self> {
        let op = fundamental_operator(&p.point)?;
        let mut exponents = Vec::with_capacity(points.len() + 1);
        for b in points {
            let values = exponents_of(&op, &Location::Point(Complex::new(num_traits::ToPrimitive::to_f64(b).unwrap_or(f64::NAN), 0.0)), tol)?;
            exponents.push(ExponentRecord { at: format_rational(b), values });
        }
        exponents.push(ExponentRecord { at: "inf".into(), values: exponents_of(&op, &Location::Infinity, tol)? });
        Ok(FiberRecord {
            chart: ChartRecord::from_chart(&p.point.chart),
            coordinates: p.point.coords.iter().map(complex_pair).collect(),
            basis: p.point.basis().iter().map(ComplexPoly::from_poly).collect(),
            multiplicity: p.multiplicity,
            source: p.source,
            exponents,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: ProblemFile,
    pub space_dim: usize,
    pub spectrum: Vec<SpectrumRecord>,
    pub fiber: Vec<FiberRecord>,
    pub checks: Vec<Check>,
}

impl ResultDocument {
    pub fn new(command: &str, input: &ProblemFile) -> Self {
        ResultDocument {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input: input.clone(),
            space_dim: 0,
            spectrum: Vec::new(),
            fiber: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
