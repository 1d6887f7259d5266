//! Joint spectrum of a restricted Bethe family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RestrictedFamily;
use crate::algebra::diffop::DiffOp;
use crate::algebra::matrix::DenseMat;
use crate::algebra::numeric::svd_kernel;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::roots::complex_roots;
use crate::algebra::scalar::{Complex, Rational, Ring, Tolerance};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    pub seed: u64,
    pub tol: f64,
    /// Relative gap below which eigenvalues of the random combination are
    /// clustered together.
    pub cluster_gap: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { seed: 7, tol: Tolerance::from_env().rel, cluster_gap: 1e-6 }
    }
}

/// One joint generalized eigenspace of the Bethe algebra.
#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    /// `h_i(u) = η_i(u) / Q(u)` for `i = 1..N`.
    pub h: Vec<RatFunc<Complex>>,
    /// Numerators `η_i(u)`, lowest coefficient first.
    pub eta: Vec<Poly<Complex>>,
    pub denom: Poly<Complex>,
    /// Coordinates in the singular weight space basis.
    pub eigenvector: Vec<Complex>,
    pub multiplicity: usize,
    /// Dimension of the honest joint eigenspace inside the block.
    pub eigenline_dim: usize,
    pub residual: f64,
}

impl SpectrumEntry {
    /// Largest imaginary part over all coefficients of the `η_i`.
    pub fn imaginary_defect(&self) -> f64 {
        let scale = self.eta.iter().map(|p| p.max_abs()).fold(1.0, f64::max);
        self.eta
            .iter()
            .flat_map(|p| p.coeffs().iter().map(|c| c.im.abs()))
            .fold(0.0, f64::max)
            / scale
    }
}

/// `∂^N + Σ h_i(u) ∂^{N−i}` attached to a spectrum entry.
#[derive(Clone, Debug)]
pub struct ScalarFuchsOp {
    pub op: DiffOp<RatFunc<Complex>>,
    /// `Q ∂^N + Σ η_i ∂^{N−i}`: the same operator with denominators cleared.
    pub cleared: DiffOp<Poly<Complex>>,
}

fn frob(m: &DenseMat<Complex>) -> f64 {
    m.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn mat_pow(m: &DenseMat<Complex>, k: usize) -> DenseMat<Complex> {
    (0..k).fold(DenseMat::identity(m.rows()), |acc, _| &acc * m)
}

fn conj_transpose(m: &DenseMat<Complex>) -> DenseMat<Complex> {
    m.transpose().map(|z| z.conj())
}

/// Single-linkage clustering of complex numbers with a relative gap.
fn cluster(values: &[Complex], gap: f64) -> Vec<(Complex, usize)> {
    let scale = values.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while l[r] != r {
            r = l[r];
        }
        l[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= gap * scale {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(values[i]),
            None => groups.push((r, vec![values[i]])),
        }
    }
    groups
        .into_iter()
        .map(|(_, v)| (v.iter().sum::<Complex>() / v.len() as f64, v.len()))
        .collect()
}

/// Eigenvalues (with multiplicity) of a rational matrix: exact
/// characteristic polynomial, square-free split, then numeric roots of each
/// square-free factor.
fn eigenvalues_exact(c: &DenseMat<Rational>) -> Vec<Complex> {
    let chi = c.charpoly();
    let mut out = Vec::new();
    for (factor, mult) in chi.squarefree_decomposition() {
        for root in complex_roots(&factor.to_complex()) {
            out.extend(std::iter::repeat(root).take(mult));
        }
    }
    out
}

struct Block {
    eta: Vec<Vec<Complex>>,
    eigenvector: Vec<Complex>,
    multiplicity: usize,
    eigenline_dim: usize,
    residual: f64,
}

fn normalize(v: &mut [Complex]) {
    let k = (0..v.len())
        .max_by(|&a, &b| v[a].norm().partial_cmp(&v[b].norm()).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty");
    let p = v[k];
    for x in v.iter_mut() {
        *x /= p;
    }
    v[k] = Complex::new(1.0, 0.0);
}

fn decompose(family: &RestrictedFamily, seed: u64, opts: &SpectrumOptions) -> Result<Vec<Block>> {
    let r = family.dim;
    let gens = family.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // seeded grid in [−1, 1] with step 1/1000, applied to norm-balanced generators
    let mut comb = DenseMat::<Rational>::zeros(r, r);
    for g in &gens {
        let w = Rational::new((rng.gen_range(-1000i64..=1000)).into(), 1000.into());
        let n = g.max_abs().max(1e-300);
        let scale = Rational::from_float(1.0 / n).unwrap_or_else(Rational::one);
        comb = &comb + &g.scale(&(w * scale));
    }
    let values = eigenvalues_exact(&comb);
    let clusters = cluster(&values, opts.cluster_gap);
    let comb_c = comb.to_complex();
    let gens_c: Vec<DenseMat<Complex>> = gens.iter().map(|g| g.to_complex()).collect();
    let mut blocks = Vec::with_capacity(clusters.len());
    for (xi, m) in clusters {
        let shifted = &comb_c - &DenseMat::scalar(r, xi);
        let g = svd_kernel(&mat_pow(&shifted, m), opts.tol.sqrt().min(1e-6));
        if g.len() != m {
            return Err(Error::NonGeneric(format!(
                "generalized eigenspace has dimension {} but the cluster has size {m}",
                g.len()
            )));
        }
        let basis = DenseMat::from_columns(r, &g);
        let basis_h = conj_transpose(&basis);
        // joint eigenvalue of every generator on the block
        let mut stacked: Vec<Vec<Complex>> = Vec::new();
        for x in &gens_c {
            let local = &(&basis_h * x) * &basis;
            let ev = local.trace() / m as f64;
            let nil = &local - &DenseMat::scalar(m, ev);
            if frob(&mat_pow(&nil, m)) > opts.tol.sqrt() * frob(x).max(1.0).powi(m as i32) {
                return Err(Error::NonGeneric("combination merged distinct joint eigenvalues".into()));
            }
            stacked.extend((0..m).map(|i| nil.row(i).to_vec()));
        }
        let joint = if stacked.is_empty() {
            DenseMat::zeros(0, m)
        } else {
            DenseMat::from_rows(stacked)?
        };
        let kernel = svd_kernel(&joint, opts.tol.sqrt().min(1e-6));
        if kernel.is_empty() {
            return Err(Error::Numerical("block without a joint eigenvector".into()));
        }
        let mut v = basis.mul_vec(&kernel[0]);
        normalize(&mut v);
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let mut residual: f64 = 0.0;
        let mut eta = Vec::with_capacity(family.n_gl);
        for a in &family.numer {
            let mut coeffs = Vec::with_capacity(a.coeffs.len());
            for x in &a.coeffs {
                let xc = x.to_complex();
                let xv = xc.mul_vec(&v);
                let q: Complex = v.iter().zip(&xv).map(|(a, b)| a.conj() * b).sum::<Complex>() / vnorm;
                let res = xv.iter().zip(&v).map(|(a, b)| (a - q * b).norm_sqr()).sum::<f64>().sqrt()
                    / vnorm.sqrt()
                    / frob(&xc).max(1.0);
                residual = residual.max(res);
                coeffs.push(q);
            }
            eta.push(coeffs);
        }
        if residual > opts.tol {
            return Err(Error::NotJointEigenvector(residual));
        }
        blocks.push(Block { eta, eigenvector: v, multiplicity: m, eigenline_dim: kernel.len(), residual });
    }
    Ok(blocks)
}

fn same_spectrum(a: &[Block], b: &[Block], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let close = |x: &Block, y: &Block| {
        x.multiplicity == y.multiplicity
            && x.eta.iter().zip(&y.eta).all(|(p, q)| {
                let scale = p.iter().chain(q).map(|z| z.norm()).fold(1.0, f64::max);
                p.len() == q.len() && p.iter().zip(q).all(|(s, t)| (s - t).norm() <= tol * scale)
            })
    };
    let mut used = vec![false; b.len()];
    a.iter().all(|x| match (0..b.len()).find(|&j| !used[j] && close(x, &b[j])) {
        Some(j) => {
            used[j] = true;
            true
        }
        None => false,
    })
}

/// Joint spectrum: one entry per generalized eigenspace. The decomposition
/// is repeated with a second seed and both runs must agree.
pub fn simultaneous_spectrum(family: &RestrictedFamily, opts: &SpectrumOptions) -> Result<Vec<SpectrumEntry>> {
    if family.dim == 0 {
        return Ok(Vec::new());
    }
    let first = decompose(family, opts.seed, opts)?;
    let second = decompose(family, opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1), opts)?;
    if !same_spectrum(&first, &second, opts.tol.sqrt()) {
        return Err(Error::NonGeneric("two random combinations disagree".into()));
    }
    let total: usize = first.iter().map(|b| b.multiplicity).sum();
    if total != family.dim {
        return Err(Error::CheckFailed(format!("multiplicities sum to {total}, expected {}", family.dim)));
    }
    let denom = family.denom.to_complex();
    Ok(first
        .into_iter()
        .map(|b| {
            let eta: Vec<Poly<Complex>> = b.eta.into_iter().map(Poly::new).collect();
            let h = eta
                .iter()
                .map(|p| RatFunc::new(p.clone(), denom.clone()).expect("nonzero denominator"))
                .collect();
            SpectrumEntry {
                h,
                eta,
                denom: denom.clone(),
                eigenvector: b.eigenvector,
                multiplicity: b.multiplicity,
                eigenline_dim: b.eigenline_dim,
                residual: b.residual,
            }
        })
        .collect())
}

pub fn fundamental_operator_of(entry: &SpectrumEntry) -> ScalarFuchsOp {
    let n = entry.h.len();
    let mut coeffs = vec![RatFunc::constant(Complex::new(0.0, 0.0)); n + 1];
    let mut cleared = vec![Poly::zero(); n + 1];
    coeffs[n] = RatFunc::constant(Complex::new(1.0, 0.0));
    cleared[n] = entry.denom.clone();
    for i in 1..=n {
        coeffs[n - i] = entry.h[i - 1].clone();
        cleared[n - i] = entry.eta[i - 1].clone();
    }
    ScalarFuchsOp { op: DiffOp::new(coeffs), cleared: DiffOp::new(cleared) }
}

/// Spectrum of a family given exactly, computed without random
/// combinations: used by tests on one-dimensional spaces.
pub fn scalar_eigenvalues(family: &RestrictedFamily) -> Option<Vec<Poly<Rational>>> {
    (family.dim == 1).then(|| {
        family
            .numer
            .iter()
            .map(|a| Poly::new(a.coeffs.iter().map(|c| c.get(0, 0).clone()).collect()))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kernel::polynomial_kernel_cleared;
    use crate::algebra::scalar::rat;
    use crate::bethe::restricted_family;
    use crate::rep::coinvariant::build_weyl_from_coefficients;
    use crate::rep::module::build_tensor_evaluation;
    use crate::rep::partition::Partition;
    use crate::rep::singular::singular_space;
    use crate::rep::spec::ProblemSpec;

    fn tensor_family(n_gl: usize, pts: &[i64], lam: &[usize]) -> RestrictedFamily {
        let v = Partition::new(&[1], n_gl).unwrap();
        let spec = ProblemSpec::new_tensor(
            n_gl,
            vec![v; pts.len()],
            Partition::new(lam, n_gl).unwrap(),
            pts.iter().map(|&b| rat(b)).collect(),
        )
        .unwrap();
        let m = build_tensor_evaluation(&spec).unwrap();
        let s = singular_space(&m, &spec.lambda);
        restricted_family(&m, &s, &spec.q_poly()).unwrap()
    }

    fn approx(p: &Poly<Complex>, want: &[f64]) -> bool {
        let n = p.coeffs().len().max(want.len());
        (0..n).all(|k| (p.coeff(k) - Complex::new(*want.get(k).unwrap_or(&0.0), 0.0)).norm() < 1e-9)
    }

    #[test]
    fn antisymmetric_pair() {
        let fam = tensor_family(2, &[1, -1], &[1, 1]);
        let spec = simultaneous_spectrum(&fam, &SpectrumOptions::default()).unwrap();
        assert_eq!(spec.len(), 1);
        let e = &spec[0];
        assert_eq!(e.multiplicity, 1);
        assert!(approx(&e.eta[0], &[0.0, -2.0]));
        assert!(approx(&e.eta[1], &[2.0]));
        let op = fundamental_operator_of(e);
        let ker = polynomial_kernel_cleared(op.cleared.coeffs(), 3, 1e-8).unwrap();
        assert_eq!(ker.len(), 2);
        assert!(approx(&ker[0], &[1.0, 0.0, 1.0]));
        assert!(approx(&ker[1], &[0.0, 1.0]));
    }

    #[test]
    fn three_points_split() {
        let fam = tensor_family(2, &[0, 1, 2], &[2, 1]);
        let spec = simultaneous_spectrum(&fam, &SpectrumOptions::default()).unwrap();
        assert_eq!(spec.len(), 2);
        assert!(spec.iter().all(|e| e.multiplicity == 1 && e.eigenline_dim == 1));
        assert!(spec.iter().all(|e| e.imaginary_defect() < 1e-8));
    }

    #[test]
    fn weyl_module_has_a_nilpotent_block() {
        let (m, _) = build_weyl_from_coefficients(2, &[rat(0), rat(0), rat(0)]).unwrap();
        let lam = Partition::new(&[2, 1], 2).unwrap();
        let s = singular_space(&m, &lam);
        let fam = restricted_family(&m, &s, &m.denom).unwrap();
        let spec = simultaneous_spectrum(&fam, &SpectrumOptions::default()).unwrap();
        assert_eq!(spec.len(), 1);
        assert_eq!(spec[0].multiplicity, 2);
        assert_eq!(spec[0].eigenline_dim, 1);
        let op = fundamental_operator_of(&spec[0]);
        let ker = polynomial_kernel_cleared(op.cleared.coeffs(), 4, 1e-8).unwrap();
        assert_eq!(ker.len(), 2);
        assert!(approx(&ker[0], &[0.0, 0.0, 0.0, 1.0]));
        assert!(approx(&ker[1], &[0.0, 1.0]));
    }

    #[test]
    fn highest_line_kernel_contains_constants() {
        let fam = tensor_family(2, &[0, 3], &[2]);
        let spec = simultaneous_spectrum(&fam, &SpectrumOptions::default()).unwrap();
        let op = fundamental_operator_of(&spec[0]);
        let ker = polynomial_kernel_cleared(op.cleared.coeffs(), 3, 1e-8).unwrap();
        assert!(ker.iter().any(|p| p.degree().finite() == Some(0)));
        assert!(scalar_eigenvalues(&fam).is_some());
    }
}
