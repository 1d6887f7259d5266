//! The monic operator with kernel `X`, its exponents, and membership in
//! intersections of Schubert cells.

use crate::algebra::diffop::DiffOp;
use crate::algebra::indicial::{indicial_at_infinity, indicial_at_point, integer_roots, Location};
use crate::algebra::kernel::polynomial_kernel_cleared;
use crate::algebra::matrix::DenseMat;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::scalar::{Field, Rational};
use crate::rep::partition::Partition;
use crate::rep::spec::ProblemSpec;
use crate::schubert::chart::{polynomial_from_coefficients, wronski_map, CellChart, SchubertPoint};
use crate::{Error, Result};

/// `D_X` and its cleared form `D̃ = Wr · D_X = Σ G_i ∂^{N−i}`.
#[derive(Clone, Debug)]
pub struct PointOperator<K: Field> {
    pub monic: DiffOp<RatFunc<K>>,
    pub cleared: DiffOp<Poly<K>>,
    pub wronskian: Poly<K>,
}

/// `D̃` from the cofactor expansion of the last row `(1, ∂, …, ∂^N)`:
/// the coefficient of `∂^k` is `(−1)^{N+k}` times the minor of the
/// matrix `[f_i^{(j)}]` without column `k`.
pub fn fundamental_operator<K: Field>(p: &SchubertPoint<K>) -> Result<PointOperator<K>> {
    let f = p.basis();
    let n = f.len();
    let mut derivs: Vec<Vec<Poly<K>>> = Vec::with_capacity(n);
    for fi in &f {
        derivs.push((0..=n).map(|k| fi.nth_derivative(k)).collect());
    }
    let mut cleared = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let minor = DenseMat::from_fn(n, n, |i, j| derivs[i][if j < k { j } else { j + 1 }].clone());
        let det = if n == 0 { Poly::one() } else { minor.det_ring() };
        cleared.push(if (n + k) % 2 == 0 { det } else { -det });
    }
    let wr = cleared[n].clone();
    if wr.is_zero() {
        return Err(Error::CheckFailed("degenerate basis".into()));
    }
    // F_1 = −Wr'/Wr, i.e. G_1 = −Wr'
    if n > 0 {
        let g1 = &cleared[n - 1];
        let defect = g1 + &wr.derivative();
        if !defect.trim_tol(1e-9 * wr.max_abs().max(1.0)).is_zero() {
            return Err(Error::CheckFailed("G_1 differs from −Wr′".into()));
        }
    }
    let monic = DiffOp::new(
        cleared
            .iter()
            .map(|g| RatFunc::new(g.clone(), wr.clone()))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(PointOperator { monic, cleared: DiffOp::new(cleared), wronskian: wr })
}

/// Exponents of `D_X` at a location, sorted ascending.
pub fn exponents<K: Field>(p: &SchubertPoint<K>, at: &Location<K>, tol: f64) -> Result<Vec<i64>> {
    let op = fundamental_operator(p)?;
    exponents_of(&op, at, tol)
}

pub fn exponents_of<K: Field>(op: &PointOperator<K>, at: &Location<K>, tol: f64) -> Result<Vec<i64>> {
    match at {
        Location::Infinity => {
            let chi = indicial_at_infinity(&op.monic)?;
            let mut e: Vec<i64> = integer_roots(&chi, tol)?.into_iter().map(|d| -d).collect();
            e.sort_unstable();
            Ok(e)
        }
        Location::Point(b) => {
            let local = op.wronskian.taylor_shift(b);
            let scale = op.wronskian.shifted_magnitude(b);
            let n_s = (0..local.coeffs().len())
                .find(|&j| !local.coeff(j).is_negligible(scale, tol))
                .unwrap_or(0);
            let chi = indicial_at_point(&op.cleared, b, n_s, tol)?;
            integer_roots(&chi, tol)
        }
    }
}

/// Valuations at `b` of a local echelon basis of `X`: an independent route
/// to the exponents at a finite point.
pub fn local_valuations<K: Field>(basis: &[Poly<K>], b: &K, tol: f64) -> Vec<i64> {
    let local: Vec<Poly<K>> = basis.iter().map(|f| f.taylor_shift(b)).collect();
    let len = local.iter().map(|f| f.coeffs().len()).max().unwrap_or(0);
    let m = DenseMat::from_fn(local.len(), len, |i, j| local[i].coeff(j));
    let mut v: Vec<i64> = m.rref(tol).pivots.iter().map(|&p| p as i64).collect();
    v.sort_unstable();
    v
}

/// Expected exponents `λ_N, λ_{N−1} + 1, …, λ_1 + N − 1` at a finite point.
pub fn expected_exponents_at_point(lam: &Partition) -> Vec<i64> {
    let n = lam.n_parts();
    (0..n).map(|k| (lam.get(n - 1 - k) + k) as i64).collect()
}

/// Expected exponents `1 − N − λ_1, …, −λ_N` at infinity.
pub fn expected_exponents_at_infinity(lam: &Partition) -> Vec<i64> {
    let n = lam.n_parts();
    (0..n).map(|i| i as i64 + 1 - n as i64 - lam.get(i) as i64).collect()
}

/// The frame at `b_s`: `(M_s)_{ij}` is the Taylor coefficient of `f_i` of
/// order `e_j = λ^{(s)}_j + N − j`, and `g_is = Σ_m (M_s^{-1})_{im} f_m`
/// expanded in powers of `u − b_s`.
#[derive(Clone, Debug)]
pub struct LocalExpansionFrame<K> {
    pub s: usize,
    pub m: DenseMat<K>,
    pub g: Vec<Poly<K>>,
}

impl<K: Field> LocalExpansionFrame<K> {
    pub fn new(p: &SchubertPoint<K>, s: usize, b: &K, lam: &Partition, tol: f64) -> Result<Self> {
        let n = p.chart.n_gl;
        let local: Vec<Poly<K>> = p.basis().iter().map(|f| f.taylor_shift(b)).collect();
        let orders: Vec<usize> = (0..n).map(|j| lam.get(j) + n - 1 - j).collect();
        let m = DenseMat::from_fn(n, n, |i, j| local[i].coeff(orders[j]));
        let inv = m.inverse(tol).map_err(|_| Error::CheckFailed(format!("M_{s} is singular")))?;
        let g = (0..n)
            .map(|i| (0..n).fold(Poly::zero(), |acc, k| &acc + &local[k].scale(inv.get(i, k))))
            .collect();
        Ok(LocalExpansionFrame { s, m, g })
    }

    /// `g_ijs` for `j < λ_i + N − i` must vanish.
    pub fn vanishing_defect(&self, lam: &Partition) -> f64 {
        let n = self.g.len();
        let scale = self.g.iter().map(|p| p.max_abs()).fold(1.0, f64::max);
        let mut worst: f64 = 0.0;
        for (i, gi) in self.g.iter().enumerate() {
            for j in 0..lam.get(i) + n - 1 - i {
                worst = worst.max(gi.coeff(j).magnitude() / scale);
            }
        }
        worst
    }
}

#[derive(Clone, Debug)]
pub struct MembershipWitness<K> {
    pub member: bool,
    pub reason: Option<String>,
    pub exponents_at_points: Vec<Vec<i64>>,
    pub exponents_at_infinity: Vec<i64>,
    pub frames: Vec<Option<LocalExpansionFrame<K>>>,
}

/// Decides whether `X ∈ Ω_{Λ,λ,b}`. The exponent test at each point is
/// cross-checked against the valuations of a local echelon basis and the
/// local frame.
pub fn membership<K: Field>(p: &SchubertPoint<K>, spec: &ProblemSpec, tol: f64) -> Result<MembershipWitness<K>> {
    let mut w = MembershipWitness {
        member: false,
        reason: None,
        exponents_at_points: Vec::new(),
        exponents_at_infinity: Vec::new(),
        frames: Vec::new(),
    };
    if spec.lambda_list.is_empty() {
        return Err(Error::InvalidInput("membership needs one partition per point".into()));
    }
    if p.chart.lambda != spec.lambda {
        w.reason = Some("chart partition differs from λ".into());
        return Ok(w);
    }
    let a: Vec<K> = wronski_map(p)?;
    let target: Vec<K> = spec.a.iter().map(K::from_rational).collect();
    let scale = target.iter().map(|x| x.magnitude()).fold(1.0, f64::max);
    if a.len() != target.len() || a.iter().zip(&target).any(|(x, y)| !(x.clone() - y.clone()).is_negligible(scale, tol)) {
        w.reason = Some("Wronskian differs from ∏(u − b_s)^{n_s}".into());
        return Ok(w);
    }
    let op = fundamental_operator(p)?;
    w.exponents_at_infinity = exponents_of(&op, &Location::Infinity, tol)?;
    let mut ok = w.exponents_at_infinity == expected_exponents_at_infinity(&spec.lambda);
    if !ok {
        w.reason = Some("exponents at infinity differ".into());
    }
    let basis = p.basis();
    for (s, (b, lam)) in spec.points.iter().zip(&spec.lambda_list).enumerate() {
        let b = K::from_rational(b);
        let e = exponents_of(&op, &Location::Point(b.clone()), tol)?;
        let v = local_valuations(&basis, &b, tol);
        if e != v {
            return Err(Error::CheckFailed(format!("indicial exponents {e:?} disagree with valuations {v:?}")));
        }
        let expected = expected_exponents_at_point(lam);
        let frame = LocalExpansionFrame::new(p, s, &b, lam, tol).ok();
        let frame_ok = frame.as_ref().is_some_and(|f| f.vanishing_defect(lam) <= tol.max(1e-12));
        if (e == expected) != frame_ok {
            return Err(Error::CheckFailed(format!("exponent test and frame test disagree at point {s}")));
        }
        if e != expected && ok {
            ok = false;
            w.reason = Some(format!("exponents at point {s} are {e:?}, expected {expected:?}"));
        }
        w.exponents_at_points.push(e);
        w.frames.push(frame);
    }
    w.member = ok;
    Ok(w)
}

/// Echelonizes the polynomial kernel of a cleared operator against the
/// chart.
pub fn reconstruct_point_from_operator<K: Field>(
    cleared: &DiffOp<Poly<K>>,
    chart: &CellChart,
    tol: f64,
) -> Result<SchubertPoint<K>> {
    let kernel = polynomial_kernel_cleared(cleared.coeffs(), chart.d, tol)?;
    if kernel.len() != chart.n_gl {
        return Err(Error::CheckFailed(format!(
            "polynomial kernel has dimension {} instead of {}",
            kernel.len(),
            chart.n_gl
        )));
    }
    SchubertPoint::from_basis(chart, &kernel, tol)
}

/// Monic Wronskian of a point, i.e. `u^n + Σ (−1)^s a_s u^{n−s}`.
pub fn monic_wronskian<K: Field>(p: &SchubertPoint<K>) -> Result<Poly<K>> {
    Ok(polynomial_from_coefficients(&wronski_map(p)?))
}

/// Exact-mode convenience: exponents at every point of a spec.
pub fn exponent_table(p: &SchubertPoint<Rational>, spec: &ProblemSpec) -> Result<Vec<Vec<i64>>> {
    let op = fundamental_operator(p)?;
    spec.points.iter().map(|b| exponents_of(&op, &Location::Point(b.clone()), 0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::diffop::{rdet, DiffOp};
    use crate::algebra::scalar::rat;

    fn chart(l: &[usize]) -> CellChart {
        CellChart::for_partition(&Partition::new(l, l.len()).unwrap()).unwrap()
    }

    #[test]
    fn antisymmetric_pair_operator() {
        let p = SchubertPoint::new(chart(&[1, 1]), vec![rat(1), rat(0)]).unwrap();
        let op = fundamental_operator(&p).unwrap();
        // ∂² − 2u/(u² − 1) ∂ + 2/(u² − 1)
        let q = Poly::new(vec![rat(-1), rat(0), rat(1)]);
        assert_eq!(op.monic.coeff(1), RatFunc::new(Poly::new(vec![rat(0), rat(-2)]), q.clone()).unwrap());
        assert_eq!(op.monic.coeff(0), RatFunc::new(Poly::constant(rat(2)), q).unwrap());
        for f in p.basis() {
            assert!(op.cleared.apply(&f).is_zero());
        }
    }

    #[test]
    fn cofactors_match_row_determinant() {
        let p = SchubertPoint::new(chart(&[2, 1, 0]), (0..3).map(|k| rat(k - 2)).collect()).unwrap();
        let op = fundamental_operator(&p).unwrap();
        let f = p.basis();
        let mut rows: Vec<Vec<DiffOp<Poly<Rational>>>> = f
            .iter()
            .map(|fi| (0..=3).map(|k| DiffOp::scalar(fi.nth_derivative(k))).collect())
            .collect();
        rows.push((0..=3).map(DiffOp::d).collect());
        let generic = rdet(&rows, &DiffOp::scalar(Poly::one())).unwrap();
        assert_eq!(generic, op.cleared);
    }

    #[test]
    fn exponents_of_cubic_example() {
        let p = SchubertPoint::<Rational>::origin(chart(&[2, 1]));
        assert_eq!(exponents(&p, &Location::Point(rat(0)), 0.0).unwrap(), vec![1, 3]);
        assert_eq!(exponents(&p, &Location::Infinity, 0.0).unwrap(), vec![-3, -1]);
        assert_eq!(exponents(&p, &Location::Point(rat(5)), 0.0).unwrap(), vec![0, 1]);
        assert_eq!(local_valuations(&p.basis(), &rat(0), 0.0), vec![1, 3]);
    }

    #[test]
    fn membership_examples() {
        let lam = Partition::new(&[2, 1], 2).unwrap();
        let p = SchubertPoint::<Rational>::origin(chart(&[2, 1]));
        let yes = ProblemSpec::new_tensor(2, vec![lam.clone()], lam.clone(), vec![rat(0)]).unwrap();
        let w = membership(&p, &yes, 0.0).unwrap();
        assert!(w.member, "{:?}", w.reason);
        assert_eq!(w.exponents_at_points, vec![vec![1, 3]]);
        let row = Partition::new(&[3, 0], 2).unwrap();
        let no = ProblemSpec::new_tensor(2, vec![row], lam, vec![rat(0)]).unwrap();
        assert!(!membership(&p, &no, 0.0).unwrap().member);

        let v = Partition::new(&[1, 0], 2).unwrap();
        let spec = ProblemSpec::new_tensor(2, vec![v.clone(), v], Partition::new(&[1, 1], 2).unwrap(), vec![rat(1), rat(-1)]).unwrap();
        let p = SchubertPoint::new(chart(&[1, 1]), vec![rat(1), rat(0)]).unwrap();
        let w = membership(&p, &spec, 0.0).unwrap();
        assert!(w.member);
        assert_eq!(w.exponents_at_points, vec![vec![0, 2], vec![0, 2]]);
    }

    #[test]
    fn reconstruction_round_trip() {
        let p = SchubertPoint::new(chart(&[2, 1]), vec![rat(3), rat(-1), rat(2)]).unwrap();
        let op = fundamental_operator(&p).unwrap();
        assert_eq!(reconstruct_point_from_operator(&op.cleared, &p.chart, 0.0).unwrap(), p);
        let trivial = chart(&[0, 0]);
        let d2 = DiffOp::new(vec![Poly::zero(), Poly::zero(), Poly::one()]);
        let x = reconstruct_point_from_operator::<Rational>(&d2, &trivial, 0.0).unwrap();
        assert_eq!(x.basis(), vec![Poly::new(vec![rat(0), rat(1)]), Poly::one()]);
    }
}
