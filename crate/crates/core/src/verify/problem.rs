//! Problem files.

use serde::{Deserialize, Serialize};

use crate::algebra::scalar::{parse_rational, Rational, Tolerance};
use crate::bethe::SpectrumOptions;
use crate::rep::partition::Partition;
use crate::rep::spec::ProblemSpec;
use crate::schubert::fiber::FiberMode;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    #[default]
    Float,
}

/// The JSON input of `spectrum`, `fiber` and `verify --suite correspondence`.
///
/// With `Lambda` present the module is `⊗ L_{λ^{(s)}}(b_s)`; without it the
/// module is `⊗ W_{n_s}(b_s)` with `n_s` from `mults` (default 1), or from
/// the coefficients `a` when those are given instead of points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(rename = "N")]
    pub n_gl: usize,
    #[serde(rename = "Lambda", default, skip_serializing_if = "Option::is_none")]
    pub lambda_list: Option<Vec<Vec<usize>>>,
    pub lambda: Vec<usize>,
    #[serde(default)]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mults: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<FiberMode>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_q_degree: Option<usize>,
}

fn default_seed() -> u64 {
    7
}

fn parse_all(v: &[String], what: &str) -> Result<Vec<Rational>> {
    v.iter()
        .map(|s| parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("cannot parse {what} `{s}`"))))
        .collect()
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed problem file: {e}")))
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn fiber_mode(&self) -> FiberMode {
        self.module.unwrap_or(if self.lambda_list.is_some() { FiberMode::IrreducibleTensor } else { FiberMode::Weyl })
    }

    pub fn tolerance(&self) -> f64 {
        self.tol.unwrap_or_else(|| Tolerance::from_env().rel)
    }

    pub fn spectrum_options(&self) -> SpectrumOptions {
        SpectrumOptions { seed: self.seed, tol: self.tolerance(), ..SpectrumOptions::default() }
    }

    pub fn to_spec(&self) -> Result<ProblemSpec> {
        let n = self.n_gl;
        if n == 0 {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        if self.lambda.len() > n {
            return Err(Error::InvalidInput("λ has more than N parts".into()));
        }
        let lambda = Partition::new(&self.lambda, n)?;
        if let Some(list) = &self.lambda_list {
            let parts = list.iter().map(|p| Partition::new(p, n)).collect::<Result<Vec<_>>>()?;
            return ProblemSpec::new_tensor(n, parts, lambda, parse_all(&self.points, "point")?);
        }
        if let Some(a) = &self.a {
            if !self.points.is_empty() {
                return Err(Error::InvalidInput("give either points or a, not both".into()));
            }
            return ProblemSpec::weyl_from_coefficients(n, lambda, parse_all(a, "coefficient")?);
        }
        let points = parse_all(&self.points, "point")?;
        let mults = self.mults.clone().unwrap_or_else(|| vec![1; points.len()]);
        ProblemSpec::new_weyl(n, lambda, points, mults)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, ratio};

    #[test]
    fn parses_tensor_and_weyl_files() {
        let f = ProblemFile::from_json(
            r#"{"N": 2, "Lambda": [[1],[1],[1]], "lambda": [2,1], "points": ["0", "1/2", "-0.25"], "mode": "float"}"#,
        )
        .unwrap();
        let s = f.to_spec().unwrap();
        assert_eq!(s.points, vec![rat(0), ratio(1, 2), ratio(-1, 4)]);
        assert_eq!(f.fiber_mode(), FiberMode::IrreducibleTensor);
        let w = ProblemFile::from_json(r#"{"N": 2, "lambda": [2,1], "a": ["0","0","0"]}"#).unwrap();
        assert_eq!(w.to_spec().unwrap().mults, vec![3]);
        assert_eq!(w.fiber_mode(), FiberMode::Weyl);
        assert!(ProblemFile::from_json(r#"{"N": 2, "lambda": [1], "bogus": 1}"#).is_err());
        let rep = ProblemFile::from_json(r#"{"N": 2, "lambda": [1,1], "points": ["1", "1"]}"#).unwrap();
        assert!(rep.to_spec().is_err());
    }
}
