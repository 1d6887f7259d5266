//! Bundled check suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::indicial::Location;
use crate::algebra::matrix::MatPoly;
use crate::algebra::scalar::{Complex, Rational, Ring};
use crate::bethe::{
    check_b1, check_bii, fundamental_operator_of, simultaneous_spectrum, universal_diffop, universal_diffop_generic,
    SpectrumOptions,
};
use crate::rep::center::{central_z, z_eigenvalue};
use crate::rep::character::{
    fake_degree, graded_character_cell, graded_character_from_model, graded_character_weyl, q_pochhammer, QSeries,
};
use crate::rep::module::{build_tensor_evaluation, tensor_power, ModuleRep};
use crate::rep::partition::{partitions_of, Partition};
use crate::rep::singular::singular_space;
use crate::rep::spec::ProblemSpec;
use crate::schubert::chart::{CellChart, SchubertPoint};
use crate::schubert::fiber::{brute_force_fiber_n2, family_for, same_fiber, FiberMode};
use crate::schubert::operator::{
    expected_exponents_at_infinity, exponents_of, fundamental_operator, membership, monic_wronskian,
    reconstruct_point_from_operator,
};
use crate::{Error, Result};

/// One verdict. Exact checks report residual 0 on success and 1 on failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

impl Check {
    pub fn exact(name: impl Into<String>, r: Result<()>) -> Self {
        match r {
            Ok(()) => Check { name: name.into(), passed: true, residual: 0.0, detail: String::new() },
            Err(e) => Check { name: name.into(), passed: false, residual: 1.0, detail: e.to_string() },
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, residual: if passed { 0.0 } else { 1.0 }, detail: detail.into() }
    }

    pub fn within(name: impl Into<String>, residual: f64, tol: f64, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: residual <= tol, residual, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn absorb(&mut self, prefix: &str, other: Report) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}: {}", c.name);
            c
        }));
    }
}

/// Largest module on which `[Z(x), e_ij] = 0` is also checked.
pub const CENTRALITY_GUARD: usize = 27;
/// Largest module on which the generic row determinant is compared with the
/// fast path.
pub const GENERIC_RDET_GUARD: usize = 8;

/// `n` distinct rationals `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 4`.
pub fn random_points(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    while out.len() < n {
        let r = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

fn v_tensor(n_gl: usize, points: &[Rational]) -> Result<(ProblemSpec, ModuleRep)> {
    let v = Partition::new(&[1], n_gl)?;
    let spec = ProblemSpec::new_tensor(n_gl, vec![v; points.len()], Partition::row(points.len(), n_gl), points.to_vec())?;
    let m = build_tensor_evaluation(&spec)?;
    Ok((spec, m))
}

fn check_zxv(m: &ModuleRep, z: &MatPoly<Rational>, n: usize) -> Result<()> {
    for lam in partitions_of(n, m.n_gl) {
        let s = singular_space(m, &lam);
        if s.dim() == 0 {
            continue;
        }
        let ev = z_eigenvalue(&lam.weight());
        for k in 0..z.coeffs.len().max(ev.coeffs().len()) {
            if &z.coeff(k) * &s.basis != s.basis.scale(&ev.coeff(k)) {
                return Err(Error::CheckFailed(format!("Z(x) v ≠ ∏(x − λ_i + i − 1) v for λ = {lam}, x^{k}")));
            }
        }
    }
    Ok(())
}

fn check_central(m: &ModuleRep, z: &MatPoly<Rational>) -> Result<()> {
    for i in 0..m.n_gl {
        for j in 0..m.n_gl {
            if z.coeffs.iter().any(|zk| !zk.commutator(m.e(i, j)).is_zero()) {
                return Err(Error::CheckFailed(format!("Z(x) does not commute with e_{}{}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

fn check_generic(m: &ModuleRep, fam: &crate::bethe::BetheOperatorFamily) -> Result<()> {
    let generic = universal_diffop_generic(m)?;
    let n = m.n_gl;
    for i in 1..=n {
        if fam.b(i) != generic.coeff(n - i) {
            return Err(Error::CheckFailed(format!("B_{i} differs between the two row-determinant routes")));
        }
    }
    Ok(())
}

/// The three identities `B_1 = −Σ e_ii(u)`, the `B_ii` relation with
/// `Z(x)`, and `Z(x) v = ∏(x − λ_i + i − 1) v` on `⊗ V(b_s)`, all exact.
pub fn suite_identities(n_gl: usize, points: &[Rational]) -> Result<Report> {
    let mut r = Report::new("identities");
    let n = points.len();
    let (spec, m) = v_tensor(n_gl, points)?;
    let fam = universal_diffop(&m, &spec.q_poly())?;
    r.checks.push(Check::exact("B1", check_b1(&m, &fam)));
    let z = central_z(&m)?;
    r.checks.push(Check::exact("Bii", check_bii(&m, &fam, &z)));
    r.checks.push(Check::exact("Zxv", check_zxv(&m, &z, n)));
    if m.dim <= CENTRALITY_GUARD {
        r.checks.push(Check::exact("Z central", check_central(&m, &z)));
    }
    if m.dim <= GENERIC_RDET_GUARD {
        r.checks.push(Check::exact("rdet routes", check_generic(&m, &fam)));
    }
    Ok(r)
}

/// [`suite_identities`] for `N ≤ n_max_gl`, `n ≤ n_max` at seeded random
/// rational points.
pub fn suite_identities_all(n_max_gl: usize, n_max: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new("identities");
    for n_gl in 1..=n_max_gl {
        for n in 1..=n_max {
            let pts = random_points(&mut rng, n);
            r.absorb(&format!("N={n_gl} n={n}"), suite_identities(n_gl, &pts)?);
        }
    }
    Ok(r)
}

fn series_check(name: String, a: &QSeries, b: &QSeries) -> Check {
    match a.first_difference(b) {
        None => Check::flag(name, true, ""),
        Some(k) => Check::flag(name, false, format!("first difference at q^{k}: {} vs {}", a.coeff(k), b.coeff(k))),
    }
}

/// Largest `n` for which the coinvariant model grading is computed.
pub const MODEL_GUARD: usize = 4;
/// Largest `N^n` for which singular dimensions are counted directly.
pub const BRUTE_DIM_GUARD: usize = 729;

/// `ch((W_n)^sing_λ)/(q)_n = q^{Σ(i−1)λ_i} ch(O_λ)` for every `λ ⊢ n ≤ n_max`
/// with at most `N` parts, plus independent routes to the left side.
pub fn suite_characters(n_gl: usize, n_max: usize, q_degree: usize) -> Result<Report> {
    let mut r = Report::new("characters");
    for n in 1..=n_max {
        let brute = if n_gl.pow(n as u32) <= BRUTE_DIM_GUARD { Some(tensor_power(n_gl, n)?) } else { None };
        for lam in partitions_of(n, n_gl) {
            let weyl = graded_character_weyl(&lam, q_degree);
            let lhs = weyl.div(&q_pochhammer(n, q_degree))?;
            let d = lam.get(0) + n_gl;
            let rhs = QSeries::monomial(lam.n_statistic(), q_degree).mul(&graded_character_cell(&lam, d, q_degree)?);
            r.checks.push(series_check(format!("N={n_gl} λ={lam}: product identity"), &lhs, &rhs));
            r.checks.push(series_check(format!("N={n_gl} λ={lam}: fake degree"), &weyl, &fake_degree(&lam, q_degree)));
            if n <= MODEL_GUARD {
                let model = graded_character_from_model(&lam, q_degree)?;
                r.checks.push(series_check(format!("N={n_gl} λ={lam}: coinvariant grading"), &weyl, &model));
            }
            if let Some(big) = &brute {
                let dim = singular_space(big, &lam).dim();
                let v = weyl.value_at_one();
                r.checks.push(Check::flag(
                    format!("N={n_gl} λ={lam}: value at 1"),
                    v == Rational::from_i64(dim as i64),
                    format!("ch(1) = {v}, dim = {dim}"),
                ));
            }
        }
    }
    Ok(r)
}

/// Coefficient tolerance for Wronskians and reality.
pub const CORRESPONDENCE_TOL: f64 = 1e-8;

fn all_ones(spec: &ProblemSpec) -> bool {
    spec.lambda_list.iter().all(|p| p.size() == 1)
}

/// The partition `μ` with exponents `{μ_N, μ_{N−1} + 1, …, μ_1 + N − 1}`,
/// if there is one.
pub fn partition_from_exponents(e: &[i64]) -> Option<Partition> {
    let n = e.len();
    let mut sorted = e.to_vec();
    sorted.sort_unstable();
    let parts: Vec<i64> = (0..n).map(|i| sorted[n - 1 - i] - (n - 1 - i) as i64).collect();
    Partition::from_signed(&parts, n).ok()
}

/// Both sides of the Bethe/Schubert correspondence for one problem.
pub fn suite_correspondence(spec: &ProblemSpec, mode: FiberMode, opts: &SpectrumOptions) -> Result<Report> {
    let mut r = Report::new("correspondence");
    let n = spec.n();
    let n_gl = spec.n_gl;
    let fam = family_for(spec, mode)?;
    let worst = (1..=n_gl)
        .filter_map(|i| fam.numer[i - 1].degree().map(|d| d as i64 - (n as i64 - i as i64)))
        .max()
        .unwrap_or(i64::MIN);
    r.checks.push(Check::flag("numerator degrees", worst <= 0, format!("max deg A_i − (n − i) = {worst}")));
    r.checks.push(Check::exact("commutativity", fam.check_commutative()));
    let alg = fam.algebra_dimension();
    r.checks.push(Check::flag("algebra dimension", alg == fam.dim, format!("dim A = {alg}, dim space = {}", fam.dim)));

    let spectrum = simultaneous_spectrum(&fam, opts)?;
    let total: usize = spectrum.iter().map(|e| e.multiplicity).sum();
    r.checks.push(Check::flag("multiplicity sum", total == fam.dim, format!("{total} vs {}", fam.dim)));
    let lines: Vec<usize> = spectrum.iter().map(|e| e.eigenline_dim).collect();
    r.checks.push(Check::flag("eigenline uniqueness", lines.iter().all(|&l| l == 1), format!("{lines:?}")));
    let res = spectrum.iter().map(|e| e.residual).fold(0.0, f64::max);
    r.checks.push(Check::within("eigenvector residual", res, opts.tol, ""));

    let chart = CellChart::for_partition(&spec.lambda)?;
    let q = spec.q_poly().to_complex();
    let q_scale = q.max_abs().max(1.0);
    let expected_inf = expected_exponents_at_infinity(&spec.lambda);
    let mut points: Vec<(SchubertPoint<Complex>, usize)> = Vec::new();
    for (k, entry) in spectrum.iter().enumerate() {
        let op = fundamental_operator_of(entry);
        let p = match reconstruct_point_from_operator(&op.cleared, &chart, opts.tol) {
            Ok(p) => p,
            Err(e) => {
                r.checks.push(Check::flag(format!("entry {k}: kernel"), false, e.to_string()));
                continue;
            }
        };
        r.checks.push(Check::flag(format!("entry {k}: kernel"), true, format!("dimension {n_gl}")));
        let w = monic_wronskian(&p)?;
        let dev = (0..=n).map(|j| (w.coeff(j) - q.coeff(j)).norm()).fold(0.0, f64::max) / q_scale;
        r.checks.push(Check::within(format!("entry {k}: Wronskian"), dev, CORRESPONDENCE_TOL, ""));
        match mode {
            FiberMode::IrreducibleTensor => {
                let m = membership(&p, spec, CORRESPONDENCE_TOL);
                let (ok, detail) = match &m {
                    Ok(w) => (w.member, w.reason.clone().unwrap_or_else(|| format!("{:?}", w.exponents_at_points))),
                    Err(e) => (false, e.to_string()),
                };
                r.checks.push(Check::flag(format!("entry {k}: exponents"), ok, detail));
            }
            FiberMode::Weyl => {
                let pop = fundamental_operator(&p)?;
                let at_inf = exponents_of(&pop, &Location::Infinity, CORRESPONDENCE_TOL)?;
                let mut ok = at_inf == expected_inf;
                let mut detail = format!("∞: {at_inf:?}");
                for (b, &ns) in spec.points.iter().zip(&spec.mults) {
                    let bz = Complex::new(num_traits::ToPrimitive::to_f64(b).unwrap_or(f64::NAN), 0.0);
                    let e = exponents_of(&pop, &Location::Point(bz), CORRESPONDENCE_TOL)?;
                    let local = partition_from_exponents(&e);
                    ok &= local.as_ref().is_some_and(|p| p.size() == ns);
                    detail.push_str(&format!(", {b}: {e:?}"));
                }
                r.checks.push(Check::flag(format!("entry {k}: exponents"), ok, detail));
            }
        }
        points.push((p, entry.multiplicity));
    }
    let distinct = (0..points.len()).all(|i| (i + 1..points.len()).all(|j| points[i].0.distance(&points[j].0) >= 1e-6));
    r.checks.push(Check::flag(
        "bijection",
        distinct && points.len() == spectrum.len(),
        format!("{} entries, {} points", spectrum.len(), points.len()),
    ));

    let imag = spectrum.iter().map(|e| e.imaginary_defect()).fold(0.0, f64::max);
    r.checks.push(Check::within("reality", imag, CORRESPONDENCE_TOL, "max |Im| of h_i coefficients"));
    let transversal = spectrum.iter().all(|e| e.multiplicity == 1);
    let expected = match mode {
        FiberMode::IrreducibleTensor => true,
        FiberMode::Weyl => spec.mults.iter().all(|&m| m == 1),
    };
    let mults: Vec<usize> = spectrum.iter().map(|e| e.multiplicity).collect();
    r.checks.push(Check::flag(
        "transversality",
        transversal || !expected,
        if expected { format!("multiplicities {mults:?}") } else { format!("multiplicities {mults:?}, not required") },
    ));
    if expected {
        r.checks.push(Check::flag(
            "eigenline count",
            spectrum.len() == fam.dim,
            format!("{} eigenlines, dim {}", spectrum.len(), fam.dim),
        ));
    }

    let oracle_applies = n_gl == 2 && n <= 3 && (mode == FiberMode::Weyl || all_ones(spec));
    if oracle_applies {
        let oracle = brute_force_fiber_n2(&chart, &spec.q_poly())?;
        let ok = same_fiber(&points, &oracle, 1e-6);
        r.checks.push(Check::flag("closed-form oracle", ok, format!("{} oracle points", oracle.len())));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn assert_all(r: &Report) {
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn identities_small() {
        assert_all(&suite_identities(2, &[rat(0), rat(1)]).unwrap());
        assert_all(&suite_identities(1, &[rat(4)]).unwrap());
        assert_all(&suite_identities(3, &[rat(0), rat(1), rat(2)]).unwrap());
    }

    #[test]
    fn characters_small() {
        let r = suite_characters(2, 4, 20).unwrap();
        assert_all(&r);
        assert!(r.checks.iter().any(|c| c.name.contains("value at 1")));
    }

    #[test]
    fn correspondence_three_points() {
        let v = Partition::new(&[1], 2).unwrap();
        let lam = Partition::new(&[2, 1], 2).unwrap();
        let spec = ProblemSpec::new_tensor(2, vec![v; 3], lam, vec![rat(0), rat(1), rat(2)]).unwrap();
        let r = suite_correspondence(&spec, FiberMode::IrreducibleTensor, &SpectrumOptions::default()).unwrap();
        assert_all(&r);
        assert!(r.checks.iter().any(|c| c.name == "closed-form oracle"));
    }

    #[test]
    fn correspondence_double_point_is_not_transversal() {
        let lam = Partition::new(&[2, 1], 2).unwrap();
        let spec = ProblemSpec::new_weyl(2, lam, vec![rat(0)], vec![3]).unwrap();
        let r = suite_correspondence(&spec, FiberMode::Weyl, &SpectrumOptions::default()).unwrap();
        assert_all(&r);
        let t = r.checks.iter().find(|c| c.name == "transversality").unwrap();
        assert!(t.detail.contains("[2]"), "{}", t.detail);
    }
}
