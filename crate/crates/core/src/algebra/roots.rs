//! Polynomial root finding.

use super::poly::Poly;
use super::scalar::{Complex, Field, Rational, Ring};

/// All complex roots (with multiplicity) by the Aberth–Ehrlich iteration,
/// followed by a few Newton polishing steps on each root.
pub fn complex_roots(p: &Poly<Complex>) -> Vec<Complex> {
    let Some(deg) = p.degree().finite() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lc = *p.leading().expect("nonzero");
    let monic: Vec<Complex> = p.coeffs().iter().map(|c| c / lc).collect();
    let mp = Poly::new(monic);
    let dp = mp.derivative();
    // Cauchy bound for the initial circle
    let radius = 1.0
        + mp.coeffs()[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4;
            Complex::from_polar(radius * 0.5 + 0.1, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let f = mp.eval(&z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / dp.eval(&z[i]);
            let mut sum = Complex::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        sum += Complex::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex::new(1.0, 0.0) - ratio * sum;
            let step = if denom.norm() > 0.0 { ratio / denom } else { ratio };
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = dp.eval(zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = mp.eval(zi) / d;
            if !step.is_finite() {
                break;
            }
            let cand = *zi - step;
            if mp.eval(&cand).norm() <= mp.eval(zi).norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    z
}

/// Integer roots of a polynomial with rational coefficients, with
/// multiplicity. The second component is the cofactor left after dividing
/// them out.
pub fn integer_roots_exact(p: &Poly<Rational>) -> (Vec<i64>, Poly<Rational>) {
    let mut rest = p.clone();
    let mut out = Vec::new();
    if rest.is_zero() {
        return (out, rest);
    }
    loop {
        let Some(deg) = rest.degree().finite() else { break };
        if deg == 0 {
            break;
        }
        let lc = rest.leading().unwrap().clone();
        let bound = rest.coeffs()[..deg]
            .iter()
            .map(|c| (c / &lc).magnitude())
            .fold(0.0, f64::max)
            .min(1e6) as i64
            + 1;
        let found = (-bound..=bound).find(|&k| rest.eval(&Rational::from_i64(k)).is_zero());
        match found {
            Some(k) => {
                out.push(k);
                rest = rest
                    .div_rem(&Poly::linear_root(Rational::from_i64(k)))
                    .expect("nonzero divisor")
                    .0;
            }
            None => break,
        }
    }
    out.sort_unstable();
    (out, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn aberth_finds_roots() {
        // (x-1)(x-2)(x+3)
        let p = Poly::new(vec![6.0, -7.0, 0.0, 1.0].into_iter().map(|x| Complex::new(x, 0.0)).collect());
        let mut r: Vec<f64> = complex_roots(&p).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_integer_roots() {
        let p = Poly::from_roots(&[(rat(2), 2), (rat(-1), 1)]);
        let (r, rest) = integer_roots_exact(&p);
        assert_eq!(r, vec![-1, 2, 2]);
        assert_eq!(rest.degree(), crate::algebra::poly::Degree::Finite(0));
    }
}
