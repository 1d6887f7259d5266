//! Normalization of Fuchsian data `(M, b)` on a circle or line: a Möbius
//! move sending `b_0` to infinity and the other points to the real line,
//! then integer shifts making the finite data partitions.

use serde::{Deserialize, Serialize};

use crate::algebra::scalar::{parse_rational, Complex, Rational, Ring};
use crate::rep::partition::Partition;
use crate::rep::spec::ProblemSpec;
use crate::{Error, Result};

/// A point of the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum SpherePoint {
    Infinity,
    Rational(Rational),
    Complex(Complex),
}

impl SpherePoint {
    /// `inf`/`∞`, a rational or decimal, or a complex number such as `1+2i`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞" | "oo") {
            return Ok(SpherePoint::Infinity);
        }
        if let Some(r) = parse_rational(t) {
            return Ok(SpherePoint::Rational(r));
        }
        t.parse::<Complex>()
            .map(SpherePoint::Complex)
            .map_err(|_| Error::InvalidInput(format!("cannot parse point `{s}`")))
    }

    fn to_complex(&self) -> Option<Complex> {
        match self {
            SpherePoint::Infinity => None,
            SpherePoint::Rational(r) => Some(Complex::new(num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN), 0.0)),
            SpherePoint::Complex(z) => Some(*z),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FuchsianData {
    #[serde(rename = "N")]
    pub n_gl: usize,
    /// `μ^{(0)}, …, μ^{(k)}`, each nonincreasing.
    #[serde(rename = "M")]
    pub mu: Vec<Vec<i64>>,
    /// `b_0, …, b_k` as strings (see [`SpherePoint::parse`]).
    pub points: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Normalized {
    /// `None` when the set of operators is empty.
    pub spec: Option<ProblemSpec>,
    pub empty_reason: Option<String>,
    pub shifts: Vec<i64>,
    pub transcript: Vec<String>,
}

/// Smallest singular value of the circle (or line) fit through the points
/// after centring and scaling them to the unit disc.
fn concircular_residual(pts: &[Complex], has_infinity: bool) -> f64 {
    if pts.len() + usize::from(has_infinity) <= 3 {
        return 0.0;
    }
    let c = pts.iter().sum::<Complex>() / pts.len() as f64;
    let r = pts.iter().map(|z| (z - c).norm()).fold(0.0, f64::max);
    let w: Vec<Complex> = pts.iter().map(|z| (z - c) / if r > 0.0 { r } else { 1.0 }).collect();
    let smallest = |cols: usize, row: &dyn Fn(Complex) -> Vec<f64>| {
        let m = nalgebra::DMatrix::from_fn(w.len().max(cols), cols, |i, j| w.get(i).map_or(0.0, |z| row(*z)[j]));
        m.svd(false, false).singular_values.iter().copied().fold(f64::INFINITY, f64::min)
    };
    // D x + E y + F = 0, and |z|² + D x + E y + F = 0 up to scale
    let line = smallest(3, &|z| vec![z.re, z.im, 1.0]);
    if has_infinity {
        return line;
    }
    line.min(smallest(4, &|z| vec![z.norm_sqr(), z.re, z.im, 1.0]))
}

/// Residual tolerance of the concircularity test.
pub const CIRCLE_TOL: f64 = 1e-9;

pub fn normalize_fuchsian_data(data: &FuchsianData) -> Result<Normalized> {
    let n = data.n_gl;
    let k1 = data.points.len();
    if k1 < 1 || data.mu.len() != k1 {
        return Err(Error::InvalidInput("need one weight sequence per point, including b_0".into()));
    }
    for mu in &data.mu {
        if mu.len() != n || mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("weights must be nonincreasing sequences of length N".into()));
        }
    }
    let pts: Vec<SpherePoint> = data.points.iter().map(|s| SpherePoint::parse(s)).collect::<Result<_>>()?;
    let mut transcript = Vec::new();

    // Möbius move.
    let finite_images: Vec<Rational> = match &pts[0] {
        SpherePoint::Infinity if pts[1..].iter().all(|p| matches!(p, SpherePoint::Rational(_))) => {
            transcript.push("b_0 = ∞ and the other points are real: no Möbius move".into());
            pts[1..]
                .iter()
                .map(|p| match p {
                    SpherePoint::Rational(r) => r.clone(),
                    _ => unreachable!(),
                })
                .collect()
        }
        SpherePoint::Rational(b0) if pts[1..].iter().all(|p| !matches!(p, SpherePoint::Complex(_))) => {
            // real points: u ↦ 1/(u − b_0), ∞ ↦ 0
            transcript.push(format!("Möbius move u ↦ 1/(u − {b0}) sends b_0 to ∞"));
            pts[1..]
                .iter()
                .map(|p| match p {
                    SpherePoint::Rational(r) => (r.clone() - b0.clone()).recip(),
                    SpherePoint::Infinity => Rational::zero(),
                    SpherePoint::Complex(_) => unreachable!(),
                })
                .collect()
        }
        _ => {
            if pts[1..].iter().any(|p| *p == SpherePoint::Infinity) {
                return Err(Error::InvalidInput("∞ may only appear as b_0 for complex data".into()));
            }
            let fin: Vec<Complex> = pts[1..].iter().map(|p| p.to_complex().expect("finite")).collect();
            let b0 = pts[0].to_complex();
            let res = match b0 {
                None => concircular_residual(&fin, true),
                Some(z) => {
                    let mut all = fin.clone();
                    all.push(z);
                    concircular_residual(&all, false)
                }
            };
            if res > CIRCLE_TOL {
                return Err(Error::InvalidInput(format!("points are not on a circle or line (residual {res:.2e})")));
            }
            if fin.is_empty() {
                Vec::new()
            } else {
                // T(u) = e^{−iθ} (u − b_1)/(u − b_0): b_0 ↦ ∞, b_1 ↦ 0, circle ↦ line through 0
                let t = |z: Complex| match b0 {
                    Some(b0) => (z - fin[0]) / (z - b0),
                    None => z - fin[0],
                };
                let theta = fin.iter().skip(1).map(|&z| t(z)).find(|w| w.norm() > 0.0).map_or(0.0, |w| w.arg());
                let rot = Complex::from_polar(1.0, -theta);
                transcript.push(format!(
                    "Möbius move u ↦ e^(−i{theta:.6})(u − b_1)/(u − b_0) onto the real line; images rounded to rationals"
                ));
                fin.iter()
                    .map(|&z| {
                        let w = rot * t(z);
                        if w.im.abs() > 1e-9 * w.norm().max(1.0) {
                            return Err(Error::Numerical("image off the real line".into()));
                        }
                        Rational::from_float(w.re).ok_or_else(|| Error::Numerical("non-finite image".into()))
                    })
                    .collect::<Result<_>>()?
            }
        }
    };
    transcript.push("exponent lists are carried along with their points".into());

    // Shifts c_s = −μ_N^{(s)} at finite points, c_0 = −Σ c_s.
    let mut shifts = vec![0i64; k1];
    let mut mu_t: Vec<Vec<i64>> = data.mu.clone();
    for s in 1..k1 {
        let c = -data.mu[s][n - 1];
        shifts[s] = c;
        mu_t[s] = data.mu[s].iter().map(|m| m + c).collect();
        if c != 0 {
            transcript.push(format!("shift μ^({s}) by c_{s} = {c}: {:?}", mu_t[s]));
        }
    }
    shifts[0] = -shifts[1..].iter().sum::<i64>();
    mu_t[0] = data.mu[0].iter().map(|m| m + shifts[0]).collect();
    if shifts[0] != 0 {
        transcript.push(format!("shift μ^(0) by c_0 = {}: {:?}", shifts[0], mu_t[0]));
    }

    let empty = |reason: String, transcript: Vec<String>, shifts: Vec<i64>| Normalized {
        spec: None,
        empty_reason: Some(reason),
        shifts,
        transcript,
    };
    if mu_t[0][0] > 0 {
        let r = format!("μ̃₁^(0) = {} > 0: no operator has these exponents", mu_t[0][0]);
        transcript.push(r.clone());
        return Ok(empty(r, transcript, shifts));
    }
    let lam_parts: Vec<usize> = (0..n).map(|i| (-mu_t[0][n - 1 - i]) as usize).collect();
    let lambda = Partition::new(&lam_parts, n)?;
    let lambda_list: Vec<Partition> = mu_t[1..]
        .iter()
        .map(|m| Partition::new(&m.iter().map(|&x| x as usize).collect::<Vec<_>>(), n))
        .collect::<Result<_>>()?;
    let total: usize = lambda_list.iter().map(|p| p.size()).sum();
    if total != lambda.size() {
        let r = format!("|λ| = {} differs from Σ|μ̃^(s)| = {total}", lambda.size());
        transcript.push(r.clone());
        return Ok(empty(r, transcript, shifts));
    }
    transcript.push(format!("λ = {:?} from the data at ∞", lambda.parts()));
    let spec = ProblemSpec::new_tensor(n, lambda_list, lambda, finite_images)?;
    Ok(Normalized { spec: Some(spec), empty_reason: None, shifts, transcript })
}
