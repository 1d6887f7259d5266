//! Weyl modules realized through the algebra `C[z_1..z_n] / I_a`, where
//! `I_a` is generated by `σ_s(z) − a_s`.

use std::collections::HashMap;

use crate::algebra::matrix::DenseMat;
use crate::algebra::poly::Poly;
use crate::algebra::scalar::{Rational, Ring};
use crate::rep::module::ModuleRep;
use crate::rep::spec::ProblemSpec;
use crate::{Error, Result};

/// Default bound on `n` for the Weyl construction.
pub const WEYL_N_GUARD: usize = 5;
/// Default bound on `N^n · n!`.
pub const COINVARIANT_DIM_GUARD: usize = 200_000;

/// Sparse element of the quotient in the staircase basis.
type Sparse = Vec<(usize, Rational)>;

/// `C[z]/I_a` with its staircase monomial basis `z^e`, `e_i ≤ n − i`.
#[derive(Clone, Debug)]
pub struct CoinvariantAlgebra {
    pub n: usize,
    pub a: Vec<Rational>,
    pub basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// Multiplication by `z_s`.
    pub mult_z: Vec<DenseMat<Rational>>,
    /// `F_m`, the coefficients of `u^n + Σ (−1)^j a_j u^{n−j}`.
    pub f_coeffs: Vec<Rational>,
}

fn staircase(n: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for i in 0..n {
        let bound = (n - 1 - i) as u32;
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=bound).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out
}

/// Exponent vectors of all monomials of degree `k` in the first `vars`
/// variables (vectors of length `n`).
fn homogeneous_monomials(k: u32, vars: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(k: u32, i: usize, vars: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == vars {
            cur[i] = k;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for t in 0..=k {
            cur[i] = t;
            rec(k - t, i + 1, vars, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if vars == 0 {
        if k == 0 {
            out.push(vec![0; n]);
        }
        return out;
    }
    rec(k, 0, vars, &mut vec![0; n], &mut out);
    out
}

impl CoinvariantAlgebra {
    pub fn new(a: &[Rational]) -> Self {
        let n = a.len();
        let mut f = vec![Rational::zero(); n + 1];
        f[n] = Rational::one();
        for (j, aj) in a.iter().enumerate() {
            let j = j + 1;
            f[n - j] = if j % 2 == 0 { aj.clone() } else { -aj.clone() };
        }
        // tails[i] = g_i minus its leading monomial z_i^{n−i}, where
        // g_i = Σ_{m ≥ i} F_m h_{m−i}(z_0..z_i) is a divided difference of F.
        let tails: Vec<Vec<(Vec<u32>, Rational)>> = (0..n)
            .map(|i| {
                let mut t = Vec::new();
                for (m, fm) in f.iter().enumerate().skip(i) {
                    if fm.is_zero() {
                        continue;
                    }
                    for e in homogeneous_monomials((m - i) as u32, i + 1, n) {
                        if m == n && e[i] == (n - i) as u32 {
                            continue;
                        }
                        t.push((e, fm.clone()));
                    }
                }
                t
            })
            .collect();
        let basis = staircase(n);
        let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        let mut alg = CoinvariantAlgebra {
            n,
            a: a.to_vec(),
            basis,
            index,
            mult_z: Vec::new(),
            f_coeffs: f,
        };
        let mut memo: HashMap<Vec<u32>, Sparse> = HashMap::new();
        let dim = alg.basis.len();
        let mut mult_z = Vec::with_capacity(n);
        for s in 0..n {
            let mut m = DenseMat::zeros(dim, dim);
            for k in 0..dim {
                let mut e = alg.basis[k].clone();
                e[s] += 1;
                for (r, c) in alg.normal_form(&e, &tails, &mut memo) {
                    m.set(r, k, c);
                }
            }
            mult_z.push(m);
        }
        alg.mult_z = mult_z;
        alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn normal_form(
        &self,
        e: &[u32],
        tails: &[Vec<(Vec<u32>, Rational)>],
        memo: &mut HashMap<Vec<u32>, Sparse>,
    ) -> Sparse {
        if let Some(&k) = self.index.get(e) {
            return vec![(k, Rational::one())];
        }
        if let Some(v) = memo.get(e) {
            return v.clone();
        }
        let n = self.n;
        let i = (0..n)
            .rev()
            .find(|&i| e[i] >= (n - i) as u32)
            .expect("non-standard monomial has a violating variable");
        let mut base = e.to_vec();
        base[i] -= (n - i) as u32;
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (t, c) in &tails[i] {
            let f: Vec<u32> = base.iter().zip(t).map(|(x, y)| x + y).collect();
            for (k, v) in self.normal_form(&f, tails, memo) {
                let entry = acc.entry(k).or_insert_with(Rational::zero);
                *entry -= c * v;
            }
        }
        let mut out: Sparse = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|x| x.0);
        memo.insert(e.to_vec(), out.clone());
        out
    }

    /// Multiplication by `p(Z_s)`.
    pub fn poly_in_z(&self, s: usize, p: &Poly<Rational>) -> DenseMat<Rational> {
        let d = self.dim();
        let mut acc = DenseMat::zeros(d, d);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &self.mult_z[s]) + &DenseMat::scalar(d, c.clone());
        }
        acc
    }

    /// `R_m(Z_s) = Σ_{j>m} F_j Z_s^{j−1−m}`: the `u^m` coefficient of
    /// `Q(u) (u − Z_s)^{−1}`.
    pub fn resolvent_coeff(&self, s: usize, m: usize) -> DenseMat<Rational> {
        let p = Poly::new((m + 1..=self.n).map(|j| self.f_coeffs[j].clone()).collect());
        self.poly_in_z(s, &p)
    }

    /// Matrix of the substitution `z_i ↦ z_{σ(i)}`.
    pub fn permutation(&self, sigma: &[usize]) -> DenseMat<Rational> {
        let d = self.dim();
        // express z_{σ(i)} products through the multiplication matrices
        let one: Vec<Rational> = (0..d).map(|k| if k == 0 { Rational::one() } else { Rational::zero() }).collect();
        let cols: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|e| {
                let mut v = one.clone();
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        v = self.mult_z[sigma[i]].mul_vec(&v);
                    }
                }
                v
            })
            .collect();
        DenseMat::from_columns(d, &cols)
    }

    /// Evaluation of a quotient element at a root `b` of the ideal.
    pub fn evaluate(&self, v: &[Rational], b: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mut t = c.clone();
                for (x, &k) in b.iter().zip(e) {
                    for _ in 0..k {
                        t *= x;
                    }
                }
                t
            })
            .fold(Rational::zero(), |a, x| a + x)
    }

    /// Elementary symmetric polynomial `σ_k(Z_1, ..., Z_n)`.
    pub fn elementary(&self, k: usize) -> DenseMat<Rational> {
        let d = self.dim();
        // coefficients of ∏ (1 + t Z_s)
        let mut coeffs = vec![DenseMat::identity(d)];
        for z in &self.mult_z {
            let mut next = vec![DenseMat::zeros(d, d); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] = &next[i] + c;
                next[i + 1] = &next[i + 1] + &(c * z);
            }
            coeffs = next;
        }
        coeffs.get(k).cloned().unwrap_or_else(|| DenseMat::zeros(d, d))
    }
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Weakly increasing tuple with content `μ`.
fn representative(mu: &[usize]) -> Vec<usize> {
    mu.iter().enumerate().flat_map(|(v, &c)| std::iter::repeat(v).take(c)).collect()
}

/// Permutation `σ` (as `σ[i]`) with `σ · t0 = t`, where
/// `(σ · t)_k = t_{σ^{-1}(k)}`.
fn carrying_permutation(t0: &[usize], t: &[usize]) -> Vec<usize> {
    let n = t.len();
    let mut sigma = vec![0; n];
    let mut next_pos: HashMap<usize, Vec<usize>> = HashMap::new();
    for (p, &v) in t.iter().enumerate().rev() {
        next_pos.entry(v).or_default().push(p);
    }
    for (q, &v) in t0.iter().enumerate() {
        let p = next_pos.get_mut(&v).and_then(|s| s.pop()).expect("same content");
        sigma[q] = p;
    }
    sigma
}

/// One S_n-orbit of tensor indices with a basis of the stabilizer-fixed part
/// of the quotient algebra.
struct Orbit {
    content: Vec<usize>,
    rep: Vec<usize>,
    /// columns in reduced echelon form
    fixed: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    degrees: Vec<usize>,
}

/// `⊗_s W_{n_s}(b_s)` as the S_n-invariants of `V^{⊗n} ⊗ C[z]/I_a`, with
/// `e_ij(u) = Σ_s e_ij^{(s)} ⊗ (u − Z_s)^{−1}`.
///
/// The basis is indexed by (content `μ`, fixed vector): an invariant is
/// determined by its component at the weakly increasing index tuple of
/// content `μ`, which must be fixed by the corresponding Young subgroup.
pub fn build_weyl_tensor(spec: &ProblemSpec) -> Result<(ModuleRep, CoinvariantAlgebra)> {
    build_weyl_from_coefficients(spec.n_gl, &spec.a)
}

/// As [`build_weyl_tensor`], from `N` and the coefficients `a` alone.
pub fn build_weyl_from_coefficients(n_gl: usize, a: &[Rational]) -> Result<(ModuleRep, CoinvariantAlgebra)> {
    let n = a.len();
    if n > WEYL_N_GUARD {
        return Err(Error::GuardExceeded(format!("Weyl module with n = {n} > {WEYL_N_GUARD}")));
    }
    let total = (n_gl as u128).pow(n as u32) * crate::algebra::scalar::factorial(n);
    if total > COINVARIANT_DIM_GUARD as u128 {
        return Err(Error::GuardExceeded(format!("coinvariant model of size {total}")));
    }
    let alg = CoinvariantAlgebra::new(a);
    if n == 0 {
        let mut m = crate::rep::module::trivial_rep(n_gl);
        m.degrees = Some(vec![0]);
        return Ok((m, alg));
    }
    let d = alg.dim();
    let homogeneous = a.iter().all(|x| x.is_zero());

    let mut perm_cache: HashMap<Vec<usize>, DenseMat<Rational>> = HashMap::new();
    let mut perm = |sigma: &[usize]| -> DenseMat<Rational> {
        perm_cache
            .entry(sigma.to_vec())
            .or_insert_with(|| alg.permutation(sigma))
            .clone()
    };

    let orbits = compute_orbits(n_gl, &alg);

    let offsets: Vec<usize> = orbits
        .iter()
        .scan(0, |acc, o| {
            let here = *acc;
            *acc += o.fixed.len();
            Some(here)
        })
        .collect();
    let dim: usize = orbits.iter().map(|o| o.fixed.len()).sum();
    let expected = n_gl.pow(n as u32);
    if dim != expected {
        return Err(Error::CheckFailed(format!(
            "invariant space has dimension {dim}, expected {expected}"
        )));
    }
    let orbit_of: HashMap<Vec<usize>, usize> = orbits.iter().enumerate().map(|(k, o)| (o.content.clone(), k)).collect();

    // resolvent coefficient matrices R_m(Z_s)
    let resolvent: Vec<Vec<DenseMat<Rational>>> = (0..n)
        .map(|s| (0..n).map(|m| alg.resolvent_coeff(s, m)).collect())
        .collect();

    let mut e_numer: Vec<Vec<DenseMat<Rational>>> = vec![vec![DenseMat::zeros(dim, dim); n]; n_gl * n_gl];
    for i in 0..n_gl {
        for j in 0..n_gl {
            for (src_k, src) in orbits.iter().enumerate() {
                if src.content[j] == 0 {
                    continue;
                }
                let mut tgt_content = src.content.clone();
                tgt_content[j] -= 1;
                tgt_content[i] += 1;
                let tgt_k = orbit_of[&tgt_content];
                let tgt = &orbits[tgt_k];
                // positions s of the target representative carrying i
                let slots: Vec<usize> = (0..n).filter(|&s| tgt.rep[s] == i).collect();
                let carried: Vec<(usize, DenseMat<Rational>)> = slots
                    .iter()
                    .map(|&s| {
                        let mut t = tgt.rep.clone();
                        t[s] = j;
                        (s, perm(&carrying_permutation(&src.rep, &t)))
                    })
                    .collect();
                for (r, fv) in src.fixed.iter().enumerate() {
                    let col = offsets[src_k] + r;
                    let moved: Vec<(usize, Vec<Rational>)> =
                        carried.iter().map(|(s, p)| (*s, p.mul_vec(fv))).collect();
                    for m in 0..n {
                        let mut comp = vec![Rational::zero(); d];
                        for (s, x) in &moved {
                            let y = resolvent[*s][m].mul_vec(x);
                            for (c, v) in comp.iter_mut().zip(y) {
                                *c += v;
                            }
                        }
                        let coords: Vec<Rational> = tgt.pivots.iter().map(|&p| comp[p].clone()).collect();
                        // the component must lie in the fixed space
                        let mut back = vec![Rational::zero(); d];
                        for (c, fv2) in coords.iter().zip(&tgt.fixed) {
                            if c.is_zero() {
                                continue;
                            }
                            for (b, x) in back.iter_mut().zip(fv2) {
                                *b += c * x;
                            }
                        }
                        if back != comp {
                            return Err(Error::CheckFailed("image leaves the invariant subspace".into()));
                        }
                        for (q, c) in coords.into_iter().enumerate() {
                            if !c.is_zero() {
                                e_numer[i * n_gl + j][m].set(offsets[tgt_k] + q, col, c);
                            }
                        }
                    }
                }
            }
        }
    }
    let e_const: Vec<DenseMat<Rational>> = e_numer.iter().map(|v| v[n - 1].clone()).collect();
    let mut labels = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for o in &orbits {
        for (r, g) in o.degrees.iter().enumerate() {
            labels.push(format!("{:?}#{}", o.content, r));
            weights.push(o.content.iter().map(|&c| c as i64).collect());
            degrees.push(*g);
        }
    }
    let rep = ModuleRep {
        n_gl,
        dim,
        labels,
        weights,
        e_const,
        e_numer,
        denom: Poly::new(alg.f_coeffs.clone()),
        degrees: if homogeneous { Some(degrees) } else { None },
    };
    Ok((rep, alg))
}

/// Evaluation at `z = b` from the invariant model into `V^{⊗n}` (lexicographic
/// basis). An isomorphism of gl_N[t]-modules when the `b_s` are distinct.
pub fn evaluation_map(n_gl: usize, alg: &CoinvariantAlgebra, module: &ModuleRep, b: &[Rational]) -> Result<DenseMat<Rational>> {
    let n = alg.n;
    if b.len() != n {
        return Err(Error::InvalidInput("evaluation point has the wrong length".into()));
    }
    let big = n_gl.pow(n as u32);
    let mut out = DenseMat::zeros(big, module.dim);
    let orbits = compute_orbits(n_gl, alg);
    let comps: Vec<(&Vec<usize>, &Vec<usize>, &Vec<Rational>)> = orbits
        .iter()
        .flat_map(|o| o.fixed.iter().map(move |f| (&o.content, &o.rep, f)))
        .collect::<Vec<_>>();
    for (col, (content, rep, fixed)) in comps.iter().enumerate() {
        for t_index in 0..big {
            let t = tuple_of(t_index, n_gl, n);
            let mut c = vec![0; n_gl];
            for &v in &t {
                c[v] += 1;
            }
            if &c != *content {
                continue;
            }
            let sigma = carrying_permutation(rep, &t);
            let moved = alg.permutation(&sigma).mul_vec(fixed);
            out.set(t_index, col, alg.evaluate(&moved, b));
        }
    }
    Ok(out)
}

fn tuple_of(mut index: usize, n_gl: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for s in (0..n).rev() {
        t[s] = index % n_gl;
        index /= n_gl;
    }
    t
}

/// Orbits of index tuples with the Young-subgroup-fixed part of the
/// quotient, in a fixed deterministic order. For homogeneous ideals the
/// fixed vectors are chosen homogeneous.
fn compute_orbits(n_gl: usize, alg: &CoinvariantAlgebra) -> Vec<Orbit> {
    let n = alg.n;
    let d = alg.dim();
    let homogeneous = alg.a.iter().all(|x| x.is_zero());
    let deg_of: Vec<usize> = alg.basis.iter().map(|e| e.iter().sum::<u32>() as usize).collect();
    let mut orbits = Vec::new();
    for content in compositions(n, n_gl) {
        let rep = representative(&content);
        let mut rows: Vec<DenseMat<Rational>> = Vec::new();
        for k in 0..n.saturating_sub(1) {
            if rep[k] == rep[k + 1] {
                let mut sigma: Vec<usize> = (0..n).collect();
                sigma.swap(k, k + 1);
                rows.push(&alg.permutation(&sigma) - &DenseMat::identity(d));
            }
        }
        let blocks: Vec<Vec<usize>> = if homogeneous {
            let maxdeg = deg_of.iter().copied().max().unwrap_or(0);
            (0..=maxdeg).map(|g| (0..d).filter(|&k| deg_of[k] == g).collect()).collect()
        } else {
            vec![(0..d).collect()]
        };
        let mut fixed: Vec<Vec<Rational>> = Vec::new();
        for block in blocks {
            let kernel: Vec<Vec<Rational>> = if rows.is_empty() {
                (0..block.len())
                    .map(|k| (0..block.len()).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect())
                    .collect()
            } else {
                DenseMat::from_fn(rows.len() * d, block.len(), |r, c| rows[r / d].get(r % d, block[c]).clone())
                    .nullspace(0.0)
            };
            for v in kernel {
                let mut full = vec![Rational::zero(); d];
                for (x, &k) in v.iter().zip(&block) {
                    full[k] = x.clone();
                }
                fixed.push(full);
            }
        }
        // reduced echelon form; homogeneous pieces have disjoint supports
        let (fixed, pivots) = if fixed.is_empty() {
            (fixed, Vec::new())
        } else {
            let red = DenseMat::from_rows(fixed).expect("rectangular").rref(0.0);
            let rows: Vec<Vec<Rational>> = (0..red.pivots.len()).map(|r| red.matrix.row(r).to_vec()).collect();
            (rows, red.pivots)
        };
        let degrees = pivots.iter().map(|&p| deg_of[p]).collect();
        orbits.push(Orbit { content, rep, fixed, pivots, degrees });
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;
    use crate::rep::module::build_tensor_evaluation;
    use crate::rep::partition::Partition;

    #[test]
    fn quotient_has_factorial_dimension_and_symmetric_relations() {
        for a in [vec![rat(0); 3], vec![rat(1), rat(-2), rat(3)], vec![rat(2), rat(1)]] {
            let alg = CoinvariantAlgebra::new(&a);
            let n = a.len();
            assert_eq!(alg.dim() as u128, crate::algebra::scalar::factorial(n));
            for (k, ak) in a.iter().enumerate() {
                assert_eq!(alg.elementary(k + 1), DenseMat::scalar(alg.dim(), ak.clone()));
            }
            for s in 0..n {
                for t in 0..n {
                    assert!(alg.mult_z[s].commutator(&alg.mult_z[t]).is_zero());
                }
            }
        }
    }

    #[test]
    fn weyl_model_dimension_and_relations() {
        let spec = ProblemSpec::new_weyl(2, Partition::new(&[2, 1], 2).unwrap(), vec![rat(0)], vec![3]).unwrap();
        let (m, _) = build_weyl_tensor(&spec).unwrap();
        assert_eq!(m.dim, 8);
        m.check_commutators().unwrap();
    }

    #[test]
    fn agrees_with_tensor_product_of_vectors() {
        let v = Partition::new(&[1], 2).unwrap();
        let pts = vec![rat(1), rat(-2), rat(3)];
        let spec = ProblemSpec::new_tensor(2, vec![v.clone(), v.clone(), v], Partition::new(&[2, 1], 2).unwrap(), pts.clone()).unwrap();
        let tensor = build_tensor_evaluation(&spec).unwrap();
        let (weyl, alg) = build_weyl_tensor(&spec).unwrap();
        let ev = evaluation_map(2, &alg, &weyl, &pts).unwrap();
        assert_eq!(ev.rank(0.0), 8);
        assert_eq!(tensor.denom, weyl.denom);
        for ij in 0..4 {
            for m in 0..3 {
                assert_eq!(&ev * &weyl.e_numer[ij][m], &tensor.e_numer[ij][m] * &ev);
            }
        }
    }
}
