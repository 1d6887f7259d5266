//! Matrix realizations of gl_N and gl_N[t] modules.

use crate::algebra::matrix::DenseMat;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::scalar::{Rational, Ring};
use crate::rep::partition::Partition;
use crate::rep::singular::singular_space;
use crate::rep::spec::ProblemSpec;
use crate::{Error, Result};

/// Default bound on the dimension of tensor products.
pub const TENSOR_DIM_GUARD: usize = 20_000;

/// Finite-dimensional module with exact rational matrices.
///
/// `e_const[i * N + j]` is the action of `e_ij`. When the module is a
/// gl_N[t]-module, `e_ij(u) = Σ_m e_numer[i * N + j][m] u^m / denom`;
/// plain gl_N-modules have no series part.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    pub n_gl: usize,
    pub dim: usize,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<i64>>,
    pub e_const: Vec<DenseMat<Rational>>,
    pub e_numer: Vec<Vec<DenseMat<Rational>>>,
    pub denom: Poly<Rational>,
    /// Polynomial degree of each basis vector when the module is graded.
    pub degrees: Option<Vec<usize>>,
}

impl ModuleRep {
    pub fn e(&self, i: usize, j: usize) -> &DenseMat<Rational> {
        &self.e_const[i * self.n_gl + j]
    }

    pub fn has_series(&self) -> bool {
        !self.e_numer.is_empty()
    }

    /// Numerator of `e_ij(u)` as a matrix of polynomials.
    pub fn e_numer_poly(&self, i: usize, j: usize) -> DenseMat<Poly<Rational>> {
        let coeffs = &self.e_numer[i * self.n_gl + j];
        DenseMat::from_fn(self.dim, self.dim, |r, c| {
            Poly::new(coeffs.iter().map(|m| m.get(r, c).clone()).collect())
        })
    }

    /// `e_ij(u)` as a matrix of rational functions.
    pub fn e_series(&self, i: usize, j: usize) -> DenseMat<RatFunc<Rational>> {
        self.e_numer_poly(i, j)
            .map(|p| RatFunc::new(p.clone(), self.denom.clone()).expect("nonzero denominator"))
    }

    /// Checks `[e_ij, e_sk] = δ_js e_ik − δ_ik e_sj` for all index pairs.
    pub fn check_commutators(&self) -> Result<()> {
        let n = self.n_gl;
        for i in 0..n {
            for j in 0..n {
                for s in 0..n {
                    for k in 0..n {
                        let lhs = self.e(i, j).commutator(self.e(s, k));
                        let mut rhs = DenseMat::zeros(self.dim, self.dim);
                        if j == s {
                            rhs = &rhs + self.e(i, k);
                        }
                        if i == k {
                            rhs = &rhs - self.e(s, j);
                        }
                        if lhs != rhs {
                            return Err(Error::CheckFailed(format!(
                                "commutator [e_{}{}, e_{}{}]",
                                i + 1,
                                j + 1,
                                s + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis indices whose weight equals `w`.
    pub fn weight_indices(&self, w: &[i64]) -> Vec<usize> {
        (0..self.dim).filter(|&k| self.weights[k] == w).collect()
    }

    fn gl_only(n_gl: usize, labels: Vec<String>, weights: Vec<Vec<i64>>, e_const: Vec<DenseMat<Rational>>) -> Self {
        ModuleRep {
            n_gl,
            dim: labels.len(),
            labels,
            weights,
            e_const,
            e_numer: Vec::new(),
            denom: Poly::one(),
            degrees: None,
        }
    }
}

/// The vector representation `V = C^N` with `e_ij e_k = δ_jk e_i`.
pub fn standard_rep(n_gl: usize) -> ModuleRep {
    let e_const = (0..n_gl * n_gl)
        .map(|ij| {
            let (i, j) = (ij / n_gl, ij % n_gl);
            DenseMat::from_fn(n_gl, n_gl, |r, c| {
                if r == i && c == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
        })
        .collect();
    let weights = (0..n_gl)
        .map(|k| (0..n_gl).map(|i| i64::from(i == k)).collect())
        .collect();
    let labels = (1..=n_gl).map(|k| format!("v{k}")).collect();
    ModuleRep::gl_only(n_gl, labels, weights, e_const)
}

/// One-dimensional trivial module.
pub fn trivial_rep(n_gl: usize) -> ModuleRep {
    ModuleRep::gl_only(
        n_gl,
        vec!["1".into()],
        vec![vec![0; n_gl]],
        vec![DenseMat::zeros(1, 1); n_gl * n_gl],
    )
}

/// `I ⊗ ... ⊗ A ⊗ ... ⊗ I` with `A` in slot `s` of the given factor dimensions.
pub fn embed(a: &DenseMat<Rational>, dims: &[usize], s: usize) -> DenseMat<Rational> {
    let left: usize = dims[..s].iter().product();
    let right: usize = dims[s + 1..].iter().product();
    DenseMat::identity(left).kron(a).kron(&DenseMat::identity(right))
}

/// gl_N-module structure on the tensor product of the given modules, with
/// lexicographic basis (first factor most significant).
pub fn tensor_product(factors: &[ModuleRep]) -> Result<ModuleRep> {
    let n_gl = factors.first().map(|f| f.n_gl).ok_or(Error::EmptyInput)?;
    let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
    let dim: usize = dims.iter().product();
    if dim > TENSOR_DIM_GUARD {
        return Err(Error::GuardExceeded(format!("tensor dimension {dim}")));
    }
    let e_const = (0..n_gl * n_gl)
        .map(|ij| {
            factors
                .iter()
                .enumerate()
                .fold(DenseMat::zeros(dim, dim), |acc, (s, f)| &acc + &embed(&f.e_const[ij], &dims, s))
        })
        .collect();
    let mut labels = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut rem = k;
        let mut idx = vec![0; factors.len()];
        for s in (0..factors.len()).rev() {
            idx[s] = rem % dims[s];
            rem /= dims[s];
        }
        labels.push(
            idx.iter()
                .zip(factors)
                .map(|(&i, f)| f.labels[i].clone())
                .collect::<Vec<_>>()
                .join("⊗"),
        );
        let mut w = vec![0i64; n_gl];
        for (&i, f) in idx.iter().zip(factors) {
            for (a, b) in w.iter_mut().zip(&f.weights[i]) {
                *a += b;
            }
        }
        weights.push(w);
    }
    Ok(ModuleRep::gl_only(n_gl, labels, weights, e_const))
}

/// `V^{⊗m}` as a gl_N-module.
pub fn tensor_power(n_gl: usize, m: usize) -> Result<ModuleRep> {
    if m == 0 {
        return Ok(trivial_rep(n_gl));
    }
    tensor_product(&vec![standard_rep(n_gl); m])
}

/// The irreducible module `L_λ`, realized inside `V^{⊗|λ|}` as the span of
/// all lowering-operator images of a singular vector of weight `λ`.
pub fn build_irrep(lambda: &Partition) -> Result<ModuleRep> {
    let n_gl = lambda.n_parts();
    let m = lambda.size();
    if m == 0 {
        return Ok(trivial_rep(n_gl));
    }
    let big = tensor_power(n_gl, m)?;
    let sing = singular_space(&big, lambda);
    if sing.dim() == 0 {
        return Err(Error::InvalidInput(format!("no singular vector of weight {lambda}")));
    }
    let top = sing.basis.column(0);
    // Breadth-first closure under e_{i+1,i}.
    let mut span: Vec<Vec<Rational>> = vec![top.clone()];
    let mut frontier = vec![top];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for i in 0..n_gl.saturating_sub(1) {
                let w = big.e(i + 1, i).mul_vec(v);
                if w.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let mut trial = span.clone();
                trial.push(w.clone());
                let mat = DenseMat::from_rows(trial).expect("rectangular");
                if mat.rank(0.0) > span.len() {
                    span.push(w.clone());
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let red = DenseMat::from_rows(span).expect("rectangular").rref(0.0);
    let dim = red.pivots.len();
    let basis: Vec<Vec<Rational>> = (0..dim).map(|r| red.matrix.row(r).to_vec()).collect();
    let coords = |v: &[Rational]| -> Vec<Rational> { red.pivots.iter().map(|&p| v[p].clone()).collect() };
    let e_const = (0..n_gl * n_gl)
        .map(|ij| {
            let cols: Vec<Vec<Rational>> = basis
                .iter()
                .map(|b| coords(&big.e_const[ij].mul_vec(b)))
                .collect();
            DenseMat::from_columns(dim, &cols)
        })
        .collect();
    let weights = red.pivots.iter().map(|&p| big.weights[p].clone()).collect();
    let labels = (0..dim).map(|k| format!("{lambda}:{k}")).collect();
    let rep = ModuleRep::gl_only(n_gl, labels, weights, e_const);
    debug_assert_eq!(rep.dim as u128, lambda.weyl_dimension());
    Ok(rep)
}

/// `⊗_s L_{λ^{(s)}}(b_s)` with `e_ij(u) = Σ_s e_ij^{(s)} / (u − b_s)`.
pub fn build_tensor_evaluation(spec: &ProblemSpec) -> Result<ModuleRep> {
    if spec.is_weyl() {
        return Err(Error::InvalidInput("tensor evaluation needs a partition per point".into()));
    }
    let factors: Vec<ModuleRep> = spec
        .lambda_list
        .iter()
        .map(build_irrep)
        .collect::<Result<_>>()?;
    let mut rep = tensor_product(&factors)?;
    let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
    let k = spec.points.len();
    let denom = Poly::from_roots(&spec.points.iter().map(|b| (b.clone(), 1)).collect::<Vec<_>>());
    // ∏_{r≠s} (u − b_r)
    let cofactors: Vec<Poly<Rational>> = (0..k)
        .map(|s| {
            Poly::from_roots(
                &spec
                    .points
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != s)
                    .map(|(_, b)| (b.clone(), 1))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let n_gl = spec.n_gl;
    rep.e_numer = (0..n_gl * n_gl)
        .map(|ij| {
            let parts: Vec<DenseMat<Rational>> = (0..k).map(|s| embed(&factors[s].e_const[ij], &dims, s)).collect();
            (0..k)
                .map(|m| {
                    (0..k).fold(DenseMat::zeros(rep.dim, rep.dim), |acc, s| {
                        let c = cofactors[s].coeff(m);
                        if c.is_zero() {
                            acc
                        } else {
                            &acc + &parts[s].scale(&c)
                        }
                    })
                })
                .collect()
        })
        .collect();
    rep.denom = denom;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn part(p: &[usize], n: usize) -> Partition {
        Partition::new(p, n).unwrap()
    }

    #[test]
    fn irreps_have_weyl_dimension() {
        for (p, n, d) in [(vec![1], 3, 3), (vec![2], 2, 3), (vec![1, 1], 2, 1), (vec![2, 1], 3, 8), (vec![2, 1], 2, 2)] {
            let l = part(&p, n);
            let rep = build_irrep(&l).unwrap();
            assert_eq!(rep.dim, d, "{l}");
            rep.check_commutators().unwrap();
        }
    }

    #[test]
    fn one_point_rank_one_module() {
        let spec = ProblemSpec::new_tensor(1, vec![part(&[1], 1)], part(&[1], 1), vec![rat(2)]).unwrap();
        let m = build_tensor_evaluation(&spec).unwrap();
        assert_eq!(m.dim, 1);
        let e = m.e_series(0, 0);
        assert_eq!(*e.get(0, 0), RatFunc::pole(rat(1), rat(2), 1));
    }

    #[test]
    fn two_point_trace_is_scalar() {
        let v = part(&[1], 2);
        let spec = ProblemSpec::new_tensor(2, vec![v.clone(), v], part(&[1, 1], 2), vec![rat(1), rat(-1)]).unwrap();
        let m = build_tensor_evaluation(&spec).unwrap();
        assert_eq!(m.dim, 4);
        m.check_commutators().unwrap();
        let tr = &m.e_series(0, 0) + &m.e_series(1, 1);
        let expect = RatFunc::pole(rat(1), rat(1), 1) + RatFunc::pole(rat(1), rat(-1), 1);
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { expect.clone() } else { RatFunc::zero() };
                assert_eq!(*tr.get(r, c), want);
            }
        }
    }

    #[test]
    fn weight_space_of_three_vectors() {
        let m = tensor_power(2, 3).unwrap();
        assert_eq!(m.dim, 8);
        assert_eq!(m.weight_indices(&[2, 1]).len(), 3);
    }
}
