//! The universal differential operator `D^B = rdet(δ_ij ∂ − e_ji(u))` on a
//! module and its restriction to singular weight spaces.

pub mod spectrum;

pub use spectrum::{fundamental_operator_of, simultaneous_spectrum, ScalarFuchsOp, SpectrumEntry, SpectrumOptions};

use std::collections::HashMap;

use crate::algebra::diffop::{rdet, MatDiffOp};
use crate::algebra::matrix::{DenseMat, MatPoly};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::scalar::{Rational, Ring};
use crate::rep::module::ModuleRep;
use crate::rep::singular::SingularWeightSpace;
use crate::{Error, Result};

/// Largest N for which the row determinant is expanded.
pub const RDET_GUARD: usize = 5;

/// `B_i(u) = A_i(u) / Q(u)` for `i = 1..N` on the whole module.
#[derive(Clone, Debug)]
pub struct BetheOperatorFamily {
    pub n_gl: usize,
    pub dim: usize,
    /// `Q(u) = ∏ (u − b_s)^{n_s}`.
    pub denom: Poly<Rational>,
    /// `numer[i - 1]` is `A_i(u)`.
    pub numer: Vec<MatPoly<Rational>>,
}

/// The Bethe family compressed to a singular weight space.
#[derive(Clone, Debug)]
pub struct RestrictedFamily {
    pub n_gl: usize,
    pub dim: usize,
    pub denom: Poly<Rational>,
    pub numer: Vec<MatPoly<Rational>>,
}

impl BetheOperatorFamily {
    /// `B_i(u)` as a matrix of rational functions.
    pub fn b(&self, i: usize) -> DenseMat<RatFunc<Rational>> {
        let a = &self.numer[i - 1];
        DenseMat::from_fn(self.dim, self.dim, |r, c| {
            let p = Poly::new(a.coeffs.iter().map(|m| m.get(r, c).clone()).collect());
            RatFunc::new(p, self.denom.clone()).expect("nonzero")
        })
    }

    /// `B_{ij}`: coefficient of `u^{-j}` in the expansion of `B_i(u)` at infinity.
    pub fn b_at_infinity(&self, i: usize, j: usize) -> DenseMat<Rational> {
        laurent_coefficient(&self.numer[i - 1], &self.denom, j, self.dim)
    }
}

impl RestrictedFamily {
    /// Every nonzero coefficient matrix of every `A_i`.
    pub fn generators(&self) -> Vec<DenseMat<Rational>> {
        self.numer
            .iter()
            .flat_map(|a| a.coeffs.iter().filter(|m| !m.is_zero()).cloned())
            .collect()
    }

    /// Checks that all coefficient matrices pairwise commute (exactly).
    pub fn check_commutative(&self) -> Result<()> {
        let g = self.generators();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !g[i].commutator(&g[j]).is_zero() {
                    return Err(Error::CheckFailed("restricted Bethe matrices do not commute".into()));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the unital algebra generated by the restricted matrices.
    pub fn algebra_dimension(&self) -> usize {
        let r = self.dim;
        if r == 0 {
            return 0;
        }
        let flat = |m: &DenseMat<Rational>| m.entries().to_vec();
        let mut span: Vec<DenseMat<Rational>> = vec![DenseMat::identity(r)];
        let mut rank = 1;
        let gens = self.generators();
        let mut frontier = span.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &gens {
                    let p = f * g;
                    let mut rows: Vec<Vec<Rational>> = span.iter().map(flat).collect();
                    rows.push(flat(&p));
                    let rk = DenseMat::from_rows(rows).expect("rectangular").rank(0.0);
                    if rk > rank {
                        rank = rk;
                        span.push(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        rank
    }
}

/// Coefficient of `u^{-j}` at infinity of `A(u)/Q(u)`.
fn laurent_coefficient(a: &MatPoly<Rational>, q: &Poly<Rational>, j: usize, dim: usize) -> DenseMat<Rational> {
    let deg_q = q.degree().finite().expect("nonzero denominator");
    let deg_a = a.coeffs.len();
    // 1/Q = Σ_k c_k u^{-deg_q - k}
    let lead = q.leading().expect("nonzero").clone();
    let span = deg_a + j + 1;
    let mut c: Vec<Rational> = Vec::with_capacity(span);
    for k in 0..span {
        let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
        for t in 1..=k.min(deg_q) {
            acc -= q.coeff(deg_q - t) * &c[k - t];
        }
        c.push(acc / lead.clone());
    }
    // u^m · u^{-deg_q - k} = u^{-j}  ⇔  k = m + j − deg_q
    let mut out = DenseMat::zeros(dim, dim);
    for (m, am) in a.coeffs.iter().enumerate() {
        if m + j < deg_q {
            continue;
        }
        let k = m + j - deg_q;
        if k < c.len() && !c[k].is_zero() {
            out = &out + &am.scale(&c[k]);
        }
    }
    out
}

/// Sparse matrix of polynomials: `(row, col, entry)`.
type SparsePolyMat = Vec<(usize, usize, Poly<Rational>)>;

/// A matrix operator applied to a block of columns: `Σ_l (T_l / q^p) ∂^l`.
#[derive(Clone)]
struct OpCols {
    pow: usize,
    terms: Vec<DenseMat<Poly<Rational>>>,
}

fn sparse_numerators(m: &ModuleRep) -> Vec<SparsePolyMat> {
    let n = m.n_gl;
    (0..n * n)
        .map(|ij| {
            let coeffs = &m.e_numer[ij];
            let mut out = Vec::new();
            for r in 0..m.dim {
                for c in 0..m.dim {
                    let p = Poly::new(coeffs.iter().map(|x| x.get(r, c).clone()).collect());
                    if !p.is_zero() {
                        out.push((r, c, p));
                    }
                }
            }
            out
        })
        .collect()
}

fn sparse_apply(e: &SparsePolyMat, t: &DenseMat<Poly<Rational>>) -> DenseMat<Poly<Rational>> {
    let mut out = DenseMat::zeros(t.rows(), t.cols());
    for (r, c, p) in e {
        for k in 0..t.cols() {
            let x = t.get(*c, k);
            if x.is_zero() {
                continue;
            }
            let v = out.get(*r, k) + &(p * x);
            out.set(*r, k, v);
        }
    }
    out
}

/// Left multiplication by the entry `δ_kj ∂ − e_jk(u)` of the row
/// determinant matrix.
fn apply_entry(x: &OpCols, e_jk: &SparsePolyMat, diagonal: bool, q: &Poly<Rational>) -> OpCols {
    let len = x.terms.len() + usize::from(diagonal);
    let (rows, cols) = (x.terms[0].rows(), x.terms[0].cols());
    let mut terms: Vec<DenseMat<Poly<Rational>>> = vec![DenseMat::zeros(rows, cols); len];
    let p = Rational::from_i64(x.pow as i64);
    let dq = q.derivative();
    for (l, t) in x.terms.iter().enumerate() {
        terms[l] = &terms[l] - &sparse_apply(e_jk, t);
        if diagonal {
            // ∂ (T/q^p) = (T' q − p q' T)/q^{p+1} + (T q / q^{p+1}) ∂
            let d = t.map(|f| &(&f.derivative() * q) - &(&dq * f).scale(&p));
            terms[l] = &terms[l] + &d;
            terms[l + 1] = &terms[l + 1] + &t.map(|f| f * q);
        }
    }
    OpCols { pow: x.pow + 1, terms }
}

fn op_add(a: &OpCols, b: &OpCols, negate: bool) -> OpCols {
    debug_assert_eq!(a.pow, b.pow);
    let len = a.terms.len().max(b.terms.len());
    let shape = (a.terms[0].rows(), a.terms[0].cols());
    let get = |x: &OpCols, l: usize| x.terms.get(l).cloned().unwrap_or_else(|| DenseMat::zeros(shape.0, shape.1));
    OpCols {
        pow: a.pow,
        terms: (0..len)
            .map(|l| if negate { &get(a, l) - &get(b, l) } else { &get(a, l) + &get(b, l) })
            .collect(),
    }
}

/// `D^B · S` for a constant block of columns `S`, by expanding the row
/// determinant along rows with memoisation over column subsets. Returns the
/// matrices `T_l` with `D^B S = Σ_l (T_l / q^N) ∂^l`.
fn apply_universal(m: &ModuleRep, s: &DenseMat<Rational>) -> Result<Vec<DenseMat<Poly<Rational>>>> {
    let n = m.n_gl;
    if n > RDET_GUARD {
        return Err(Error::GuardExceeded(format!("row determinant of size {n}")));
    }
    if !m.has_series() {
        return Err(Error::InvalidInput("module has no current-algebra action".into()));
    }
    let q = &m.denom;
    let e = sparse_numerators(m);
    let start = OpCols { pow: 0, terms: vec![s.map(|x| Poly::constant(x.clone()))] };
    let mut memo: HashMap<u32, OpCols> = HashMap::new();
    fn rec(
        row: usize,
        cols: u32,
        n: usize,
        e: &[SparsePolyMat],
        q: &Poly<Rational>,
        start: &OpCols,
        memo: &mut HashMap<u32, OpCols>,
    ) -> OpCols {
        if cols == 0 {
            return start.clone();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc: Option<OpCols> = None;
        let mut pos = 0;
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let minor = rec(row + 1, cols & !(1 << j), n, e, q, start, memo);
            // entry (row, j) is δ_{row j} ∂ − e_{j,row}(u)
            let term = apply_entry(&minor, &e[j * n + row], row == j, q);
            acc = Some(match acc {
                None => term,
                Some(a) => op_add(&a, &term, pos % 2 == 1),
            });
            pos += 1;
        }
        let v = acc.expect("nonempty");
        memo.insert(cols, v.clone());
        v
    }
    let full = rec(0, (1u32 << n) - 1, n, &e, q, &start, &mut memo);
    debug_assert_eq!(full.pow, n);
    Ok(full.terms)
}

/// Converts `T_{N−i} / q^N` to `A_i / Q`, checking exact divisibility and
/// the degree bound `deg A_i ≤ n − i`.
fn numerators_from_terms(
    terms: &[DenseMat<Poly<Rational>>],
    n_gl: usize,
    q: &Poly<Rational>,
    target: &Poly<Rational>,
) -> Result<Vec<DenseMat<Poly<Rational>>>> {
    let qn = q.pow(n_gl);
    let n = target.degree().finite().unwrap_or(0);
    let mut out = Vec::with_capacity(n_gl);
    for i in 1..=n_gl {
        let t = terms.get(n_gl - i).cloned().unwrap_or_else(|| DenseMat::zeros(terms[0].rows(), terms[0].cols()));
        let mut a = DenseMat::zeros(t.rows(), t.cols());
        for r in 0..t.rows() {
            for c in 0..t.cols() {
                let num = t.get(r, c) * target;
                let v = num.div_exact(&qn, 0.0).map_err(|_| {
                    Error::CheckFailed(format!("B_{i} has a pole outside the declared denominator"))
                })?;
                if !v.degree().at_most(n.saturating_sub(i)) || (i > n && !v.is_zero()) {
                    return Err(Error::CheckFailed(format!("numerator of B_{i} exceeds degree n − i")));
                }
                a.set(r, c, v);
            }
        }
        out.push(a);
    }
    Ok(out)
}

/// `D^B` on the whole module, with `Q` the declared common denominator.
pub fn universal_diffop(m: &ModuleRep, target: &Poly<Rational>) -> Result<BetheOperatorFamily> {
    let terms = apply_universal(m, &DenseMat::identity(m.dim))?;
    let numer = numerators_from_terms(&terms, m.n_gl, &m.denom, target)?
        .iter()
        .map(MatPoly::from_poly_matrix)
        .map(|mut p| {
            if p.dim == 0 {
                p.dim = m.dim;
            }
            p
        })
        .collect();
    Ok(BetheOperatorFamily { n_gl: m.n_gl, dim: m.dim, denom: target.clone(), numer })
}

/// Compresses every coefficient matrix to the subspace; the subspace must
/// be invariant.
pub fn restrict(family: &BetheOperatorFamily, s: &SingularWeightSpace) -> Result<RestrictedFamily> {
    let numer = family
        .numer
        .iter()
        .map(|a| {
            Ok(MatPoly {
                dim: s.dim(),
                coeffs: a.coeffs.iter().map(|c| s.restrict(c)).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RestrictedFamily { n_gl: family.n_gl, dim: s.dim(), denom: family.denom.clone(), numer })
}

/// Restricted family computed directly on the columns of the singular
/// basis, without forming the full-module operator.
pub fn restricted_family(m: &ModuleRep, s: &SingularWeightSpace, target: &Poly<Rational>) -> Result<RestrictedFamily> {
    let r = s.dim();
    if r == 0 {
        return Ok(RestrictedFamily {
            n_gl: m.n_gl,
            dim: 0,
            denom: target.clone(),
            numer: vec![MatPoly::zero(0); m.n_gl],
        });
    }
    let terms = apply_universal(m, &s.basis)?;
    let cols = numerators_from_terms(&terms, m.n_gl, &m.denom, target)?;
    let mut numer = Vec::with_capacity(m.n_gl);
    for a in cols {
        // a = S · (restricted), read the coordinates at the pivots
        let deg = a.entries().iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let mut coeffs = Vec::with_capacity(deg);
        for k in 0..deg {
            let block = a.map(|p| p.coeff(k));
            let restricted = DenseMat::from_fn(r, r, |i, j| block.get(s.pivots[i], j).clone());
            if &s.basis * &restricted != block {
                return Err(Error::CheckFailed("singular space is not Bethe-invariant".into()));
            }
            coeffs.push(restricted);
        }
        numer.push(MatPoly { dim: r, coeffs });
    }
    Ok(RestrictedFamily { n_gl: m.n_gl, dim: r, denom: target.clone(), numer })
}

/// `D^B` through the generic matrix-operator row determinant; slow, used as
/// an independent check of [`universal_diffop`].
pub fn universal_diffop_generic(m: &ModuleRep) -> Result<MatDiffOp<RatFunc<Rational>>> {
    let n = m.n_gl;
    let d = m.dim;
    let entries: Vec<Vec<MatDiffOp<RatFunc<Rational>>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = m.e_series(j, i).map(|x| -x.clone());
                    let mut op = MatDiffOp::multiplication(e).expect("square");
                    if i == j {
                        op = op.try_add(&MatDiffOp::d(d, 1)).expect("same shape");
                    }
                    op
                })
                .collect()
        })
        .collect();
    rdet(&entries, &MatDiffOp::identity(d))
}

/// `B_1(u) = −Σ_i e_ii(u)`, checked exactly.
pub fn check_b1(m: &ModuleRep, family: &BetheOperatorFamily) -> Result<()> {
    let n = m.n_gl;
    let trace = (0..n).fold(DenseMat::zeros(m.dim, m.dim), |acc, i| &acc + &m.e_numer_poly(i, i));
    // A_1 / Q = −trace / q  ⇔  A_1 q = −trace Q
    let a1 = &family.numer[0];
    for r in 0..m.dim {
        for c in 0..m.dim {
            let a = Poly::new(a1.coeffs.iter().map(|x| x.get(r, c).clone()).collect());
            let lhs = &a * &m.denom;
            let rhs = -&(trace.get(r, c) * &family.denom);
            if lhs != rhs {
                return Err(Error::CheckFailed(format!("B_1 identity fails at entry ({r},{c})")));
            }
        }
    }
    Ok(())
}

/// `Σ_{i=0}^N B_ii ∏_{j<N−i}(α − j) = Z(α − N + 1)`, checked exactly as
/// matrix polynomials in `α`.
pub fn check_bii(m: &ModuleRep, family: &BetheOperatorFamily, z: &MatPoly<Rational>) -> Result<()> {
    let n = m.n_gl;
    let d = m.dim;
    let mut lhs: Vec<DenseMat<Rational>> = vec![DenseMat::zeros(d, d); n + 1];
    for i in 0..=n {
        let bii = if i == 0 { DenseMat::identity(d) } else { family.b_at_infinity(i, i) };
        let f = crate::algebra::indicial::falling_poly::<Rational>(n - i);
        for (k, c) in f.coeffs().iter().enumerate() {
            lhs[k] = &lhs[k] + &bii.scale(c);
        }
    }
    // Z(α − N + 1) = Σ_k Z_k (α − N + 1)^k
    let shift = Poly::new(vec![Rational::from_i64(1 - n as i64), Rational::one()]);
    let mut rhs: Vec<DenseMat<Rational>> = vec![DenseMat::zeros(d, d); n + 1];
    for (k, zk) in z.coeffs.iter().enumerate() {
        let p = shift.pow(k);
        for (t, c) in p.coeffs().iter().enumerate() {
            rhs[t] = &rhs[t] + &zk.scale(c);
        }
    }
    if lhs != rhs {
        return Err(Error::CheckFailed("B_ii identity fails".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;
    use crate::rep::module::build_tensor_evaluation;
    use crate::rep::partition::Partition;
    use crate::rep::singular::singular_space;
    use crate::rep::spec::ProblemSpec;

    fn vspec(n_gl: usize, pts: &[i64], lam: &[usize]) -> ProblemSpec {
        let v = Partition::new(&[1], n_gl).unwrap();
        ProblemSpec::new_tensor(
            n_gl,
            vec![v; pts.len()],
            Partition::new(lam, n_gl).unwrap(),
            pts.iter().map(|&b| rat(b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_one_operator() {
        let spec = vspec(1, &[3], &[1]);
        let m = build_tensor_evaluation(&spec).unwrap();
        let fam = universal_diffop(&m, &spec.q_poly()).unwrap();
        // B_1 = −1/(u − 3)
        assert_eq!(*fam.b(1).get(0, 0), RatFunc::pole(rat(-1), rat(3), 1));
    }

    #[test]
    fn fast_path_matches_generic_row_determinant() {
        let spec = vspec(2, &[0, 1, -2], &[2, 1]);
        let m = build_tensor_evaluation(&spec).unwrap();
        let fam = universal_diffop(&m, &spec.q_poly()).unwrap();
        let generic = universal_diffop_generic(&m).unwrap();
        assert_eq!(generic.coeff(2), DenseMat::<Rational>::identity(8).map(|x| RatFunc::constant(x.clone())));
        for i in 1..=2 {
            assert_eq!(fam.b(i), generic.coeff(2 - i), "B_{i}");
        }
        check_b1(&m, &fam).unwrap();
        check_bii(&m, &fam, &crate::rep::center::central_z(&m).unwrap()).unwrap();
    }

    #[test]
    fn restriction_routes_agree() {
        let spec = vspec(2, &[0, 1, 2], &[2, 1]);
        let m = build_tensor_evaluation(&spec).unwrap();
        let s = singular_space(&m, &spec.lambda);
        let q = spec.q_poly();
        let full = restrict(&universal_diffop(&m, &q).unwrap(), &s).unwrap();
        let fast = restricted_family(&m, &s, &q).unwrap();
        assert_eq!(full.dim, 2);
        for i in 0..2 {
            assert_eq!(full.numer[i].degree(), fast.numer[i].degree());
            for k in 0..=full.numer[i].degree().unwrap_or(0) {
                assert_eq!(full.numer[i].coeff(k), fast.numer[i].coeff(k));
            }
        }
        fast.check_commutative().unwrap();
        assert_eq!(fast.algebra_dimension(), 2);
    }

    #[test]
    fn antisymmetric_line_is_one_dimensional() {
        let spec = vspec(2, &[1, -1], &[1, 1]);
        let m = build_tensor_evaluation(&spec).unwrap();
        let s = singular_space(&m, &spec.lambda);
        let fam = restricted_family(&m, &s, &spec.q_poly()).unwrap();
        assert_eq!(fam.dim, 1);
        // B_1 = −2u/(u² − 1)
        let a1 = Poly::new(fam.numer[0].coeffs.iter().map(|c| c.get(0, 0).clone()).collect());
        assert_eq!(a1, Poly::new(vec![rat(0), rat(-2)]));
    }
}
